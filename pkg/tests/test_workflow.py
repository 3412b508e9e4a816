import asyncio

import pytest

from hnp_knot.errors import BadParameter, InputError, UnknownConstruction
from hnp_knot.groups.zoo import build_Pprime
from hnp_knot.orchestrator.decision import KnotDecider
from hnp_knot.orchestrator.workflow import process_document, resolve_document, resolve_group
from hnp_knot.schemas.models import AdequacyReport, GroupLiteral, InputDocument, NamedGroup
from hnp_knot.utils.hashing import canonical_hash


def _literal(G):
    return GroupLiteral(degree=G.degree, generators=[list(g.images) for g in G.generators])


def _run(document, command="sha", decider=None):
    return asyncio.run(process_document(document=document, decider=decider or KnotDecider(), command=command))


@pytest.fixture
def pprime1_document():
    return InputDocument(group=_literal(build_Pprime(1, 3)), label="P'1")


def test_sha_on_a_group_literal(pprime1_document):
    result = _run(pprime1_document)
    report = result["report"]
    assert result["group_order"] == 9
    assert result["document"] is pprime1_document
    assert report.sha_invariants == [3]
    assert report.decision == "Z/3"
    assert report.label == "P'1"
    assert report.input_hash == canonical_hash(pprime1_document)


def test_h1pic_on_a_group_literal(pprime1_document):
    report = _run(pprime1_document, command="h1pic")["report"]
    assert report.question == "h1pic"
    assert report.decision == "Z/3"


def test_adequacy_with_translations_decomposed(translations3):
    document = InputDocument(
        group=_literal(build_Pprime(1, 3)),
        decomposition_groups=[[list(g.images) for g in translations3.generators]],
    )
    report = _run(document, command="adequacy")["report"]
    assert isinstance(report, AdequacyReport)
    assert report.adequate
    assert report.sylow_order == 9
    assert report.decision == "trivial"


def test_named_group_document():
    document = InputDocument(group=NamedGroup(name=" P'n ", p=3, n=2))
    result = _run(document)
    assert result["group_order"] == 27
    assert result["report"].sha_invariants == [3]
    assert result["report"].sylow_shape == ["P'", 2]


def test_document_methods_replace_the_deciders(pprime1_document):
    document = pprime1_document.model_copy(update={"methods": ["classifier"]})
    report = _run(document)["report"]
    assert report.method == "classifier"
    assert report.sha_invariants == [3]


def test_resolve_document_builds_the_decomposition_set(translations3):
    document = InputDocument(
        group=_literal(build_Pprime(1, 3)),
        stabilizer_point=4,
        decomposition_groups=[[list(g.images) for g in translations3.generators]],
    )
    G, H, D = resolve_document(document)
    assert H.is_trivial()
    assert len(D) == 6


def test_bad_generator_is_located():
    document = InputDocument(group=GroupLiteral(degree=9, generators=[[0, 1, 2]]))
    with pytest.raises(InputError) as excinfo:
        _run(document)
    assert excinfo.value.location == "group.generators[0]"
    assert "generator_length_mismatch" in str(excinfo.value)


def test_bad_decomposition_group_is_located(pprime1_document):
    document = pprime1_document.model_copy(update={"decomposition_groups": [[[0] * 9]]})
    with pytest.raises(InputError) as excinfo:
        resolve_document(document)
    assert excinfo.value.location == "decomposition_groups[0][0]"


def test_stabilizer_point_out_of_range(pprime1_document):
    document = pprime1_document.model_copy(update={"stabilizer_point": 9})
    with pytest.raises(InputError) as excinfo:
        resolve_document(document)
    assert excinfo.value.location == "stabilizer_point"


def test_unknown_names_and_commands(pprime1_document):
    with pytest.raises(UnknownConstruction):
        resolve_group(NamedGroup(name="M11"))
    with pytest.raises(BadParameter):
        _run(pprime1_document, command="zoo")
