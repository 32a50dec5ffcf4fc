# %% [markdown]
# # Command-line pipeline
#
# ``correlate -> enumerate -> verify`` over JSON documents, driven here through
# ``paf.cli.main`` so it runs without a shell.  The same commands work as
# ``paf correlate signals.json -o gamma.json`` and so on.

# %%
import json
import tempfile
from pathlib import Path

from paf import cli
from paf.io import dumps, signals_to_doc
from paf.synthetic import worked_example_signals

work = Path(tempfile.mkdtemp())
(work / "signals.json").write_text(dumps(signals_to_doc(worked_example_signals())))

codes = [
    cli.main(["correlate", str(work / "signals.json"), "-o", str(work / "gamma.json")]),
    cli.main(["enumerate", str(work / "gamma.json"), "-o", str(work / "all.json")]),
    cli.main(["verify", str(work / "all.json")]),
]
print("exit codes", codes)

# %%
doc = json.loads((work / "all.json").read_text())
print("count", doc["count"], "multiplicities", doc["multiplicities"])
print([s["index"] for s in doc["solutions"]])

# %% [markdown]
# A malformed document exits with code 2 and a located diagnostic on stderr.

# %%
(work / "bad.json").write_text('{"K": 2, "N": 3, "signals": [[[1, 0]]]}')
print("exit code", cli.main(["correlate", str(work / "bad.json")]))
