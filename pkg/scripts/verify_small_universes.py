"""Exhaustive union-closed scan for universes {1..n}, n = 1..4 by default.

    python3 scripts/verify_small_universes.py --max-n 4 --workers 2
    python3 scripts/verify_small_universes.py --max-n 5 --allow-five --checkpoint run5.ckpt
"""
import argparse
import sys
import time

from lcmclosed.search import verify_exhaustive


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--allow-five", action="store_true")
    ap.add_argument("--checkpoint", default=None, help="checkpoint path (n = 5 only)")
    args = ap.parse_args()

    print(f"{'n':>2} {'candidates':>12} {'union-closed':>13} {'violations':>10} {'min ratio':>10} {'secs':>8}")
    failed = False
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        ckpt = args.checkpoint if n == 5 else None
        r = verify_exhaustive(n, workers=args.workers, allow_five=args.allow_five, checkpoint=ckpt)
        failed |= bool(r.violations) or bool(r.transport_failures)
        print(f"{n:>2} {r.candidates:>12} {r.union_closed_count:>13} {len(r.violations):>10} "
              f"{str(r.min_abundance):>10} {time.perf_counter() - t0:>8.2f}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
