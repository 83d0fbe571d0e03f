#!/usr/bin/env python3
"""Print the pipeline's intermediate stages for a small instance.

Handy for eyeballing the construction: spanning tree, extra edges,
Steiner subtree, branch set, compressed graph, its separator, repairs
and the final separator, all in the edge-list text format.
"""

import argparse
import sys

from atsep.fileformat import load_graph
from atsep.gen import GenSpec, generate
from atsep.pipeline import dump_stages, format_trace


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("input", nargs="?", help="graph file; omit to generate one")
    parser.add_argument("--n", type=int, default=24)
    parser.add_argument("--r", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if args.input:
        G = load_graph(args.input)
    else:
        G = generate(GenSpec(n=args.n, r=args.r, seed=args.seed))
    sys.stdout.write(format_trace(dump_stages(G)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
