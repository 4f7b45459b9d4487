#!/usr/bin/env python3
"""Rebuild the bundled default hexamer library (offline, takes minutes).

Writes src/seqnamer/data/hexamer_library_default.txt with an empty build
timestamp so rebuilds are byte-identical.
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from seqnamer.library import DEFAULT_LIBRARY_RESOURCE, build_library_from_scratch, save_library


def main() -> None:
    out = (
        pathlib.Path(__file__).resolve().parents[1]
        / "src"
        / "seqnamer"
        / "data"
        / DEFAULT_LIBRARY_RESOURCE
    )
    if len(sys.argv) > 1:
        out = pathlib.Path(sys.argv[1])
    t0 = time.time()
    lib = build_library_from_scratch(verbose=True)
    save_library(lib, out)
    print(f"wrote {out} in {time.time() - t0:.0f}s", flush=True)


if __name__ == "__main__":
    main()
