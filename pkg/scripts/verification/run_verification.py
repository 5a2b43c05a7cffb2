"""
Verification run - launches `main.py verify` in debug mode and prints the failures

Usage:
    uv run python scripts/verification/run_verification.py [k ...]

Runs the suite once per multiplicity (default 0, 0.5 and 1.5), each into its own
artifact directory, and exits non-zero when any run fails.
"""

import os
import subprocess
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.core.utils.json_helpers import load_json_file  # noqa: E402

# Fix Unicode encoding for Windows console
os.environ["PYTHONIOENCODING"] = "utf-8"
if os.name == "nt":
    subprocess.run(["chcp", "65001"], shell=True, capture_output=True)
try:
    sys.stdout.reconfigure(encoding="utf-8")  # type: ignore[attr-defined]
    sys.stderr.reconfigure(encoding="utf-8")  # type: ignore[attr-defined]
except AttributeError:
    pass

DEFAULT_K = ("0", "0.5", "1.5")
WORKERS = "4"


def verify(k: str) -> int:
    out_dir = PROJECT_ROOT / "artifacts" / f"k={k}"
    command = [
        "uv",
        "run",
        "python",
        str(PROJECT_ROOT / "main.py"),
        "verify",
        "--k",
        k,
        "--workers",
        WORKERS,
        "--timings",
        "--format",
        "json",
        "--output",
        str(out_dir / "verification.json"),
        "--debug",
        "--log-file",
        f"verify_k={k}.log",
    ]
    result = subprocess.run(command)

    report = load_json_file(out_dir / "verification.json", default=None)
    if report is None:
        print(f"⚠️  k={k}: no report written (exit {result.returncode})")
        return result.returncode or 1
    failed = [c for c in report["checks"] if not c["passed"]]
    print(f"📊 k={k}: {len(report['checks']) - len(failed)}/{len(report['checks'])} passed")
    for check in failed:
        print(f"   ❌ {check['name']} ({check['anchor']}): residual {check['residual']}")
    return result.returncode


def main() -> int:
    values = sys.argv[1:] or list(DEFAULT_K)
    print(f"🚀 Verifying k in {', '.join(values)}...")
    print("─" * 50)
    codes = [verify(k) for k in values]
    print("\nℹ️  Log files: logs/verify_k=*.log")
    return max(codes, default=0)


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
