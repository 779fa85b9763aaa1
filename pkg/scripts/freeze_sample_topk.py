"""Recompute the brute-force top-10 of the six-term example database and store it."""
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from conftest import sample_db  # noqa: E402
from trajmine.oracle import brute_topk  # noqa: E402

top = brute_topk(sample_db(), 10)
out = [{"terms": [[list(t.cells), list(t.activities)] for t in p.terms], "score": str(s)} for p, s in top]
(ROOT / "tests" / "data" / "sample_brute_top10.json").write_text(
    "[\n" + ",\n".join(json.dumps(r) for r in out) + "\n]\n")
print(json.dumps(out[:3]))
