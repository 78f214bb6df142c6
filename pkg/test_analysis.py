#!/usr/bin/env python3
"""
Simple smoke script to verify the poset polytopes toolkit works correctly.
Runs directly (python test_analysis.py) or under pytest.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).parent


def test_imports():
    """Test that all modules can be imported correctly."""
    from src.analysis.report import analyze_pair  # noqa: F401
    from src.analysis.sweep import sweep  # noqa: F401
    from src.data.loader import load_poset  # noqa: F401
    from src.gamma.construct import gamma  # noqa: F401
    from src.toric.groebner import verify_pairing  # noqa: F401
    from src.utils.logger import setup_logging  # noqa: F401


def test_config():
    """Test configuration loading."""
    from src.utils.config import get_config

    config = get_config()
    assert config.geometry.max_dimension >= 4
    assert config.sweep.max_dimension == 4


def test_poset_loading():
    """Test the sample poset files."""
    from src.data.loader import load_pair

    first, second = load_pair(str(ROOT / "posets" / "example_p.json"), str(ROOT / "posets" / "example_q.json"))
    assert first.less(0, 1) and second.less(1, 0)


def test_example_ehrhart():
    """The two-element chains with opposite labelings."""
    import sympy

    from src.data.loader import load_pair
    from src.gamma.construct import PairingKind, gamma
    from src.geometry.ehrhart import ehrhart

    first, second = load_pair(str(ROOT / "posets" / "example_p.json"), str(ROOT / "posets" / "example_q.json"))
    oo = ehrhart(gamma(PairingKind.OO, first, second))
    oc = ehrhart(gamma(PairingKind.OC, first, second))
    cc = ehrhart(gamma(PairingKind.CC, first, second))
    assert list(oo.coefficients) == [1, sympy.Rational(5, 2), sympy.Rational(3, 2)]
    assert oc == cc
    assert [int(c) for c in cc.coefficients] == [1, 2, 2]


def main():
    """Run all checks."""
    print("Testing Poset Polytopes Toolkit")
    print("=" * 50)

    tests = [
        test_imports,
        test_config,
        test_poset_loading,
        test_example_ehrhart,
    ]

    passed = 0
    for test in tests:
        try:
            test()
            print(f"✅ {test.__name__}")
            passed += 1
        except Exception as e:
            print(f"❌ {test.__name__}: {e}")

    print("=" * 50)
    print(f"Results: {passed}/{len(tests)} tests passed")

    if passed == len(tests):
        print("\nNext steps:")
        print("1. Analyze a pair: python main.py analyze posets/chain3.json posets/bottom_pair3.json")
        print("2. Run a sweep: python main.py sweep 3 --format text")
        return 0
    return 1


if __name__ == "__main__":
    sys.path.insert(0, str(ROOT))
    sys.exit(main())
