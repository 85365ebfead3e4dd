#!/usr/bin/env python3
"""Download and prepare the real network datasets used by the dataset tests.

Needs outbound network access (snap.stanford.edu).  Produces:

  data/facebook_dn.txt  largest connected component of the Facebook ego
                        network whose LCC has 1033 nodes / 26747 edges
  data/enron.txt        the raw Enron email edge list (used via degree-rank
                        derivation, ranks 501-1500)

Re-run `pytest tests/test_acceptance.py -k p8` afterwards.
"""

import gzip
import io
import sys
import tarfile
import urllib.request
from pathlib import Path

from diversinet.graph import (
    Graph,
    derive_degree_rank_subgraph,
    load_edge_list,
    serialize_edge_list,
)

FACEBOOK_URL = "https://snap.stanford.edu/data/facebook.tar.gz"
ENRON_URL = "https://snap.stanford.edu/data/email-Enron.txt.gz"
TARGET = (1033, 26747)


def fetch(url: str) -> bytes:
    print(f"downloading {url} ...", file=sys.stderr)
    with urllib.request.urlopen(url) as resp:
        return resp.read()


def facebook_component(archive: bytes) -> Graph:
    """Pick the ego network whose largest connected component matches the
    expected size; fall back to the closest one."""
    candidates = []
    with tarfile.open(fileobj=io.BytesIO(archive), mode="r:gz") as tar:
        for member in tar.getmembers():
            if not member.name.endswith(".edges"):
                continue
            text = tar.extractfile(member).read().decode("utf-8")
            g = load_edge_list(text)
            lcc = derive_degree_rank_subgraph(g, 1, g.node_count)
            candidates.append((member.name, lcc))
    if not candidates:
        raise RuntimeError("no .edges files found in the archive")
    exact = [c for c in candidates if (c[1].node_count, c[1].edge_count) == TARGET]
    if exact:
        name, lcc = exact[0]
    else:
        name, lcc = min(
            candidates,
            key=lambda c: abs(c[1].node_count - TARGET[0]) + abs(c[1].edge_count - TARGET[1]),
        )
        print(
            f"warning: no ego network matches {TARGET} exactly; "
            f"closest is {name} with ({lcc.node_count}, {lcc.edge_count})",
            file=sys.stderr,
        )
    print(f"using {name}: ({lcc.node_count}, {lcc.edge_count})", file=sys.stderr)
    return lcc


def main() -> int:
    data_dir = Path(__file__).resolve().parent.parent / "data"
    data_dir.mkdir(exist_ok=True)

    lcc = facebook_component(fetch(FACEBOOK_URL))
    (data_dir / "facebook_dn.txt").write_text(serialize_edge_list(lcc), encoding="utf-8")

    enron = gzip.decompress(fetch(ENRON_URL)).decode("utf-8")
    (data_dir / "enron.txt").write_text(enron, encoding="utf-8")
    g = load_edge_list(enron)
    sub = derive_degree_rank_subgraph(g, 501, 1500)
    print(
        f"enron: ({g.node_count}, {g.edge_count}); "
        f"ranks 501-1500 component: ({sub.node_count}, {sub.edge_count})",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
