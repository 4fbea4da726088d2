"""
Reproducible command-line runs
==============================

Every subcommand writes CSV data and a JSON manifest.  Rerunning the
manifest reproduces the counts byte for byte, whatever the thread count.
"""

import json
import tempfile
from pathlib import Path

from sepscope.cli import main

out = Path(tempfile.mkdtemp())

# %%
# A PPT estimate with two worker threads.
main(["ppt", "--system", "two-qubit", "--samples", "1e5", "--seed", "3", "--threads", "2",
      "--out", str(out / "first")])
manifest = out / "first" / "ppt-two-qubit.manifest.json"
print(json.dumps(json.loads(manifest.read_text())["counts"]))

# %%
# Rerun from the manifest, this time single-threaded.
main(["--manifest", str(manifest), "--threads", "1", "--out", str(out / "again")])
same = (out / "first" / "ppt-two-qubit.csv").read_bytes() == (out / "again" / "ppt-two-qubit.csv").read_bytes()
print("identical output:", same)

# %%
# Figures are regenerated with their data and a comparison table.
main(["reproduce-figure", "--id", "master-formula", "--out", str(out / "fig")])
print(sorted(p.name for p in (out / "fig").iterdir()))
