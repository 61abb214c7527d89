#!/usr/bin/env python
"""
Quick start script: verify the shipped fixtures, run the tests, render figures
"""
import argparse
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).parent
FIXTURES = ROOT / "fixtures"
OUTPUT = ROOT / "output"
PLUMB = [sys.executable, str(ROOT / "src" / "plumb.py")]


def run_command(cmd, cwd=None, check=True):
    """Run a command, exit on failure when check is set"""
    print(f"\n> {' '.join(str(c) for c in cmd)}")
    result = subprocess.run(cmd, cwd=cwd)
    if check and result.returncode != 0:
        print(f"❌ Command failed with exit code {result.returncode}")
        sys.exit(result.returncode)
    return result


def fixture_files():
    return sorted(FIXTURES.glob("*.graph"))


def verify_fixtures():
    """Verify every fixture after cocycle optimization"""
    print("\n" + "=" * 60)
    print("🔎 VERIFYING FIXTURES")
    print("=" * 60)

    run_command(PLUMB + ["verify", "--optimize-cocycle", *map(str, fixture_files())])

    print("\n✅ All fixtures verified!")


def run_tests():
    """Run tests"""
    print("\n" + "=" * 60)
    print("🧪 RUNNING TESTS")
    print("=" * 60)

    run_command([sys.executable, "-m", "pytest", "src/tests/", "-v"], cwd=ROOT)

    print("\n✅ Tests complete!")


def render_fixtures(fmt="svg"):
    """Render every fixture into output/"""
    print("\n" + "=" * 60)
    print("🎨 RENDERING FIXTURES")
    print("=" * 60)

    OUTPUT.mkdir(parents=True, exist_ok=True)
    for path in fixture_files():
        out = OUTPUT / f"{path.stem}.{'svg' if fmt == 'svg' else 'tex'}"
        run_command(PLUMB + ["render", "--optimize-cocycle", "--format", fmt, "--out", str(out), str(path)])

    print(f"\n✅ Figures written to {OUTPUT}")


def main():
    parser = argparse.ArgumentParser(description="Plumbing graph to Heegaard diagram - Quick Start Script")

    parser.add_argument(
        "command",
        choices=["verify", "test", "render", "render-tikz", "all"],
        help="Command to run",
    )

    args = parser.parse_args()

    if args.command == "verify":
        verify_fixtures()

    elif args.command == "test":
        run_tests()

    elif args.command == "render":
        render_fixtures("svg")

    elif args.command == "render-tikz":
        render_fixtures("tikz")

    elif args.command == "all":
        print("\n🚀 Running full pipeline...\n")
        verify_fixtures()
        run_tests()
        render_fixtures("svg")


if __name__ == "__main__":
    main()
