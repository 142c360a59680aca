"""Regenerate (or verify) the golden files under tests/golden.

The goldens pin the canonical JSON serialization and the LP-format export of
the worked two-district example.  Both renderings are deterministic, so the
files should only ever change together with an intentional format change.

    python3 scripts/regen_goldens.py           # rewrite the files
    python3 scripts/regen_goldens.py --check   # exit 1 if anything drifted
"""

from __future__ import annotations

import argparse
from pathlib import Path

from grouppb import (
    Group,
    Instance,
    Project,
    Voter,
    build_milp,
    export_lp_format,
    serialize_instance,
    validate_instance,
)

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def district_pair() -> Instance:
    """Four projects, two disjoint district groups; optimum 4 = {p2,p3,p4}."""
    return validate_instance(
        Instance(
            budget=5,
            projects=(
                Project(id="p1", cost=2),
                Project(id="p2", cost=1),
                Project(id="p3", cost=3),
                Project(id="p4", cost=1),
            ),
            voters=(
                Voter(id="v1", approves=frozenset({"p1", "p2", "p3"})),
                Voter(id="v2", approves=frozenset({"p3", "p4"})),
            ),
            groups=(
                Group(id="F1", members=frozenset({"p1", "p3"}), budget=3),
                Group(id="F2", members=frozenset({"p2", "p4"}), budget=2),
            ),
        )
    )


def render_all() -> dict[str, str]:
    inst = district_pair()
    return {
        "district_pair.json": serialize_instance(inst),
        "district_pair.lp": export_lp_format(build_milp(inst)),
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true", help="verify instead of rewrite")
    args = parser.parse_args(argv)

    GOLDEN.mkdir(parents=True, exist_ok=True)
    drifted = []
    for name, text in sorted(render_all().items()):
        path = GOLDEN / name
        if args.check:
            on_disk = path.read_text() if path.exists() else None
            status = "ok" if on_disk == text else "DRIFT"
            if on_disk != text:
                drifted.append(name)
            print(f"{status:>6}  {path}")
        else:
            path.write_text(text)
            print(f" wrote  {path}")
    if drifted:
        print(f"{len(drifted)} golden file(s) out of date; rerun without --check to refresh")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
