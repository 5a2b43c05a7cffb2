"""
Quality gate: ruff, pyright and the fast test suite

Usage:
    uv run python scripts/quality/run_quality.py [--fix] [--slow]

Stages run in order and stop at the first failure:
1. ruff check (with --fix and ruff format when asked)
2. pyright on src and tests
3. pytest, skipping tests marked slow unless --slow is given
"""

import argparse
import os
import subprocess
import sys

# Fix Unicode encoding for Windows console
os.environ["PYTHONIOENCODING"] = "utf-8"
if os.name == "nt":
    subprocess.run(["chcp", "65001"], shell=True, capture_output=True)
try:
    sys.stdout.reconfigure(encoding="utf-8")  # type: ignore[attr-defined]
    sys.stderr.reconfigure(encoding="utf-8")  # type: ignore[attr-defined]
except AttributeError:
    pass


def run_stage(title: str, command: list[str]) -> bool:
    print(f"{title}")
    print("─" * 70)
    result = subprocess.run(["uv", "run", *command], text=True)
    if result.returncode != 0:
        print(f"❌ {' '.join(command)} exited with {result.returncode}")
        return False
    return True


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the quality gate")
    parser.add_argument("--fix", action="store_true", help="Let ruff fix and format the code")
    parser.add_argument("--slow", action="store_true", help="Include tests marked slow")
    args = parser.parse_args()

    stages: list[tuple[str, list[str]]] = []
    if args.fix:
        stages.append(("🔧 Running ruff check --fix...", ["ruff", "check", "--fix", "."]))
        stages.append(("✨ Running ruff format...", ["ruff", "format", "."]))
    stages.append(("🔍 Running ruff check...", ["ruff", "check", "."]))
    stages.append(("🔎 Running pyright...", ["pyright", "src", "tests"]))
    pytest_args = ["pytest", "-q"] if args.slow else ["pytest", "-q", "-m", "not slow"]
    stages.append(("🧪 Running pytest...", pytest_args))

    for title, command in stages:
        if not run_stage(title, command):
            return 1

    print("=" * 70)
    print("✅ Quality gate passed.")
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n⚠️  Operation cancelled by user")
        sys.exit(130)
    except Exception as e:
        print(f"\n\n❌ Unexpected error: {e}")
        import traceback

        traceback.print_exc()
        sys.exit(1)
