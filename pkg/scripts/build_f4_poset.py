"""Build the F4 eigenvalue poset and write it to the on-disk cache.

    python scripts/build_f4_poset.py --jobs 4 --cache-dir ~/.cache/lieorder

Later runs of the library and the test suite load the cached file instead of
rebuilding it.  Use --force to discard an existing cache.
"""

from __future__ import annotations

import argparse
import logging
import time

from lieorder.eigenposet import _cache_path, build_m_poset, default_cache_dir


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("--force", action="store_true", help="rebuild even if a cache file exists")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    path = _cache_path("F4", args.cache_dir or default_cache_dir())
    if args.force and path.exists():
        path.unlink()
    t0 = time.perf_counter()
    poset = build_m_poset("F4", jobs=args.jobs, cache_dir=args.cache_dir)
    dt = time.perf_counter() - t0
    print(f"F4: {len(poset.p)} rows, {len(poset)} nodes, r = {poset.r}, {dt:.1f}s")
    print(f"cache: {path}")


if __name__ == "__main__":
    main()
