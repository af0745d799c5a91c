import os

import pytest

from invforge.errors import InvForgeError
from invforge import corpus

REQUIRED_IDS = {"an-split", "an-nonsplit", "e8", "char2", "m7", "claim51",
                "parabolic", "permmod", "h1-real-an", "rank-po3"}


def test_registry_has_required_entries():
    ids = {eid for eid, _, _ in corpus.list_examples()}
    assert REQUIRED_IDS <= ids
    assert len(ids) >= 10


def test_ids_unique():
    ids = [eid for eid, _, _ in corpus.list_examples()]
    assert len(ids) == len(set(ids))


def test_group_files_parse():
    for case in corpus.registry().values():
        if case.group_file:
            g = corpus.load_corpus_group(case.group_file)
            assert g.order >= 1


def test_action_files_parse():
    for case in corpus.registry().values():
        for _, fact, payload in case.facts:
            if fact == "h1_count":
                action_file = payload.split(";")[0].strip()
                assert os.path.exists(os.path.join(corpus.DATA_DIR, action_file))


def test_manifest_roundtrip():
    with open(os.path.join(corpus.DATA_DIR, "manifest.txt"), encoding="utf-8") as fh:
        text = fh.read()
    cases = corpus.parse_manifest(text)
    again = corpus.parse_manifest(corpus.serialize_manifest(cases))
    assert cases == again


def test_unknown_example_rejected():
    with pytest.raises(InvForgeError):
        corpus.verify_example("no-such-example")


def test_example_ids_case_insensitive():
    rep = corpus.verify_example("AN-SPLIT")
    assert rep.example_id == "an-split"
    assert rep.passed


def test_every_assertion_carries_provenance():
    for case in corpus.registry().values():
        for provenance, fact, payload in case.facts:
            assert provenance in ("classical", "derived", "direct")


def test_verify_report_shape(mu3):
    rep = corpus.verify_example("an-split")
    d = rep.as_dict()
    assert d["example"] == "an-split"
    assert d["passed"] is True
    for res in d["assertions"]:
        assert set(res) == {"assertion", "provenance", "expected", "computed", "ok"}


def test_verify_all_light_examples():
    # the heavyweight entries run in the acceptance suite; spot-check the rest
    for eid in sorted(corpus.registry()):
        if eid in ("e8", "m7"):
            continue
        rep = corpus.verify_example(eid)
        assert rep.passed, (eid, [r.as_dict() for r in rep.results if not r.ok])
