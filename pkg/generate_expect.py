"""Write --expect files for every claimed exception list into ./expectations/."""

import json
from pathlib import Path

from backend.constant import CLAIMED_EXCEPTIONS

OUTPUT_DIR = Path("./expectations")

# The log-concavity claim covers both the weak and the strong scan.
ALIASES = {"logconcave": ["logconcave", "logconcave-strong"]}


def write_expectations(output_dir: Path = OUTPUT_DIR) -> list:
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for scan, exceptions in CLAIMED_EXCEPTIONS.items():
        for name in ALIASES.get(scan, [scan]):
            path = output_dir / f"{name}.json"
            path.write_text(json.dumps({"exceptions": exceptions}, indent=2) + "\n", encoding="utf-8")
            written.append(path)
    return written


if __name__ == "__main__":
    for path in write_expectations():
        print(f"wrote {path}")
