"""Access to the shipped example proofs (and the deliberately broken ones)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .proofdoc import ProofDocument, parse_proof


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    file: str
    title: str
    description: str
    expect: dict
    expect_strict: Optional[dict] = None


def _data_dir(kind: str):
    return resources.files(__package__) / "data" / kind


def list_examples() -> list[CorpusEntry]:
    index = json.loads((_data_dir("corpus") / "index.json").read_text("utf-8"))
    return [CorpusEntry(id=e["id"], file=e["file"], title=e["title"],
                        description=e["description"], expect=e["expect"],
                        expect_strict=e.get("expect_strict"))
            for e in index["examples"]]


def example_text(example_id: str) -> str:
    for entry in list_examples():
        if entry.id == example_id:
            return (_data_dir("corpus") / entry.file).read_text("utf-8")
    raise KeyError(f"no example named {example_id!r}")


def load_example(example_id: str) -> ProofDocument:
    return parse_proof(example_text(example_id))


def list_doctored() -> list[dict]:
    index = json.loads((_data_dir("doctored") / "index.json").read_text("utf-8"))
    return index["proofs"]


def doctored_text(file: str) -> str:
    return (_data_dir("doctored") / file).read_text("utf-8")
