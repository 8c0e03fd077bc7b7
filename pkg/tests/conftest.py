"""Shared fixtures: corpus files, elaborated judgements, and small builders."""

from pathlib import Path

import pytest

from defuncc.harness import load_file, source_judgements

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
BAD = CORPUS / "bad"


@pytest.fixture(scope="session")
def corpus_paths() -> list[Path]:
    paths = sorted(CORPUS.glob("*.cc"))
    assert paths, "corpus directory is empty"
    return paths


@pytest.fixture(scope="session")
def corpus_judgements(corpus_paths):
    """Every (label, context, term) judgement from every corpus file."""
    out = []
    for path in corpus_paths:
        elab = load_file(path)
        for name, ctx, term in source_judgements(elab):
            out.append((f"{path.name}:{name}", ctx, term))
    return out


@pytest.fixture(scope="session")
def bad_dcc_paths() -> list[Path]:
    paths = sorted(BAD.glob("*.dcc"))
    assert len(paths) == 5
    return paths


@pytest.fixture(scope="session")
def elaborated():
    """Loader for corpus files by stem name."""

    def load(stem: str):
        return load_file(CORPUS / f"{stem}.cc")

    return load
