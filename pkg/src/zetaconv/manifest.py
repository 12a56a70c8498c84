"""Run manifests: every file-writing command records what produced its outputs.

A manifest holds the command name, the resolved parameter map, checksums of
any input files, the tool version and the seed.  Nothing time- or
host-dependent goes in, so identical manifests imply byte-identical outputs.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    input_digests: dict = field(default_factory=dict)
    tool_version: str = ""
    seed: int = 0

    def to_json(self) -> str:
        obj = {
            "command": self.command,
            "parameters": self.parameters,
            "input_digests": self.input_digests,
            "tool_version": self.tool_version,
            "seed": self.seed,
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_outputs(outdir: str, artifacts: dict, manifest: RunManifest) -> None:
    """Write artifact files (name -> text) plus manifest.json into outdir."""
    os.makedirs(outdir, exist_ok=True)
    for name, text in artifacts.items():
        with open(os.path.join(outdir, name), "w", encoding="utf-8") as fh:
            fh.write(text)
    with open(os.path.join(outdir, "manifest.json"), "w", encoding="utf-8") as fh:
        fh.write(manifest.to_json())
