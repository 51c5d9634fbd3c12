"""Regenerate src/hurwitzchow/data/golden.json.

Every anchor value here is typed in from an independently published closed
form, then rendered through the package's own canonical serializers so that
`hurwitz-chow verify` can compare computed objects byte for byte.  Nothing
in this script runs the geometric pipelines; if it did, the golden file
would just restate whatever the code computes.
"""

import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from hurwitzchow.cli import class_fingerprint  # noqa: E402
from hurwitzchow.coeffs import GenusPoly, GenusRational  # noqa: E402
from hurwitzchow.gring import ring_new  # noqa: E402


def _gp(*down):
    return GenusPoly(list(reversed(down)))


def main() -> None:
    ring = ring_new(
        [
            ("a1", 1),
            ("a2", 2),
            ("a2p", 1),
            ("a3p", 2),
            ("b2", 2),
            ("b2p", 1),
            ("c2", 2),
        ],
        4,
    )
    a1 = ring.gen("a1")
    a2 = ring.gen("a2")
    a2p = ring.gen("a2p")
    a3p = ring.gen("a3p")
    b2 = ring.gen("b2")
    b2p = ring.gen("b2p")
    c2 = ring.gen("c2")

    def fp(cls):
        return class_fingerprint(cls)

    def rr(num, den=1):
        return str(GenusRational.of(num, den))

    golden = {
        # -- degree 3 ---------------------------------------------------
        "deg3.relations.count": 4,
        "deg3.relations.first": fp(_gp(8, 12) * a1 - 9 * a2p),
        "deg3.chow.presentation.g2": "Q",
        "deg3.chow.presentation.g3": "Q[a1]/(a1^2)",
        "deg3.chow.presentation.g4": "Q[a1]/(a1^2)",
        "deg3.chow.presentation.g5": "Q[a1]/(a1^2)",
        "deg3.chow.presentation.g6": "Q[a1]/(a1^3)",
        "deg3.chow.presentation.g7": "Q[a1]/(a1^3)",
        "deg3.chow.presentation.g8": "Q[a1]/(a1^3)",
        "deg3.split.g2": fp(a2p - 2 * a1),
        "deg3.split.g3": fp(
            3 * a1 * a1
            + GenusRational.of(1, 2) * a2
            - GenusRational.of(5, 2) * (a1 * a2p)
            + GenusRational.of(1, 2) * (a2p * a2p)
            + 3 * c2
        ),
        "deg3.split.g5": fp(
            6 * a1 * a1
            + GenusRational.of(1, 2) * a2
            - GenusRational.of(7, 2) * (a1 * a2p)
            + GenusRational.of(1, 2) * (a2p * a2p)
            + 6 * c2
        ),
        # -- degree 4 ---------------------------------------------------
        "deg4.relations.count": 18,
        "deg4.relations.first": fp(_gp(8, 20) * a1 - 8 * a2p - b2p),
        "deg4.dims": [2, 4, 3, 2, 1, 1],
        "deg4.kappa1": fp(_gp(12, 24) * a1 - 12 * a2p),
        "deg4.triple": fp(_gp(24, 60) * a1 - 24 * a2p),
        "deg4.double": fp(_gp(-32, -80) * a1 + 36 * a2p),
        "deg4.det.pair": str(_gp(96, 240)),
        "deg4.quad.reduced": [rr(0), rr(0), rr(0), rr(4)],
        "deg4.presentation.count": 4,
        "deg4.presentation.lead": rr(_gp(2, 9, 10, 0)),
        # -- degree 5 ---------------------------------------------------
        "deg5.ni.count": 8,
        "deg5.sing.first": fp(_gp(10, 36) * a1 - 7 * a2p - b2p),
        "deg5.dims": [2, 5, 6, 7, 4, 3, 2],
        "deg5.kappa1": fp(_gp(12, 36) * a1 - 12 * a2p),
        "deg5.triple": fp(_gp(24, 84) * a1 - 24 * a2p),
        "deg5.double": fp(_gp(-32, -112) * a1 + 36 * a2p),
        "deg5.det.pair": str(_gp(96, 336)),
        "deg5.quad.reduced": [
            rr(_gp(156, 468), 5),
            rr(-108, 5),
            rr(0),
            rr(_gp(-108, -216), 5),
            rr(_gp(-52, -468, -1352, -1248), 5),
        ],
        "deg5.extra.raw": fp(
            _gp(3, 24, 48) * c2 - 3 * a1 * a1 - 3 * a2 + 3 * b2
        ),
        "deg5.extra.reduced": [
            rr(12),
            rr(0),
            rr(0),
            rr(-24),
            rr(_gp(-12, -84, 144)),
        ],
        "deg5.kappa2.reduced": [
            rr(_gp(30, 66)),
            rr(-21),
            rr(0),
            rr(_gp(-21, 2)),
            rr(_gp(-10, -66, -104, 0)),
        ],
        "deg5.presentation.count": 5,
        "deg5.presentation.lead": rr(_gp(1064, 3610)),
        # -- engine ------------------------------------------------------
        "engine.pieri.g24.s1^4": 2,
        "engine.pieri.g24.s2^2": 1,
        "engine.pieri.g25.s1^6": 5,
    }

    out = ROOT / "src" / "hurwitzchow" / "data" / "golden.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(golden, indent=1, sort_keys=True) + "\n")
    print(f"wrote {out} ({len(golden)} anchors)")


if __name__ == "__main__":
    main()
