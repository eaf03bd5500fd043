import json

from greenmorita import errors


def test_to_dict_is_json():
    e = errors.NotAssociative("bad", witness=(1, 2, 3))
    d = e.to_dict()
    assert d == {"error": "NotAssociative", "message": "bad", "witness": [1, 2, 3]}
    json.dumps(errors.RangeNotAtom("x", witness=(1, frozenset({2}))).to_dict())


def test_hierarchy():
    for name in ["NotAssociative", "NoInverse", "NonUniqueInverse", "NotIdempotent",
                 "BadParams", "RangeNotAtom", "NotEquivalence", "NotSemisimple",
                 "NotSelfAdjoint", "NotCStar", "DegenerateSplit", "NotHomomorphism",
                 "NotStarEndo", "CentralityAxiomFails", "IndexNotClosed",
                 "StabilizerInconsistent", "ParseError"]:
        assert issubclass(getattr(errors, name), errors.GreenMoritaError)
