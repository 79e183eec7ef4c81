"""Run the desk-scale acceptance panels through the command line and summarize them."""
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.main import run  # noqa: E402

PANELS = [
    ("model curvature", ["curvature", "--samples", "200"]),
    ("2D pinching", ["pinch2d", "--L", "5", "6", "7", "8", "--eps", "0.1"]),
    ("trig identities", ["identities", "--samples", "100000", "--tol", "1e-10"]),
    ("ratio bounds", ["bounds", "lemma361"]),
    ("radius chart bound", ["bounds", "lemma355"]),
    ("slow family charts", ["bounds", "prop332"]),
    ("DNP on the octahedron", ["patches", "dnp", "--complex", "octahedron"]),
    ("DNP on the 16-cell", ["patches", "dnp", "--complex", "16-cell"]),
    ("patch coverage", ["patches", "cover", "--complex", "octahedron"]),
    ("patch disjointness", ["patches", "disjoint", "--complex", "octahedron"]),
    ("absorption", ["patches", "absorb", "--complex", "octahedron", "--rays", "1000"]),
    ("continuation cut limits", ["cutlimits", "continuation", "--b", "-3", "-1", "0.25", "2"]),
    ("reindexed cut limits", ["cutlimits", "reindexed", "--b", "-1", "0", "1"]),
    ("smoothed surface", ["smooth2d", "--L", "5"]),
    ("parameter independence", ["independence", "--complex", "circle5"]),
    ("cubify simplex2", ["cubify", "--complex", "simplex2"]),
    ("cubify simplex3", ["cubify", "--complex", "simplex3"]),
    ("cubify octahedron", ["cubify", "--complex", "octahedron"]),
]


def main() -> int:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("reports")
    out_dir.mkdir(parents=True, exist_ok=True)
    print("🚀 Running acceptance panels...\n")

    failures = []
    for i, (title, argv) in enumerate(PANELS):
        out = out_dir / f"{i:02d}_{argv[0]}.json"
        start = time.time()
        code, report = run(argv + ["--out", str(out)])
        elapsed = time.time() - start
        status = "✅" if code == 0 else "❌"
        print(f"{status} {title:<26} exit={code} checks={len(report.checks) if report else 0} ({elapsed:.1f}s)")
        if code != 0:
            failures.append(title)

    print("")
    if failures:
        print(f"❌ {len(failures)} panel(s) failed: {', '.join(failures)}")
        return 1
    print(f"✅ All {len(PANELS)} panels passed; reports in {out_dir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
