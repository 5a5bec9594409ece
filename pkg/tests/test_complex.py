from fractions import Fraction

import pytest

from tropglue.complex import ContactData, Domain, FaceId, classify_point, contact_data, side_frame
from tropglue.errors import InvalidContactError, OutOfDomainError
from tropglue.lattice import wedge

F = Fraction


@pytest.mark.parametrize(
    "p, face",
    [
        ((0, 0), FaceId.C1), ((1, 0), FaceId.C2), ((0, 1), FaceId.C3),
        ((F(1, 2), 0), FaceId.S12), ((0, F(1, 3)), FaceId.S13), ((F(1, 4), F(3, 4)), FaceId.S23),
        ((F(1, 3), F(1, 3)), FaceId.INT),
    ],
)
def test_classify(p, face):
    assert classify_point(p) is face


@pytest.mark.parametrize("p", [(-1, 0), (F(2, 3), F(2, 3)), (0, F(-1, 9))])
def test_classify_outside(p):
    with pytest.raises(OutOfDomainError):
        classify_point(p)


def test_plane_has_no_faces():
    assert classify_point((5, -7), Domain.plane()) is FaceId.INT


def test_domain():
    assert Domain.triangle((1, -2)).twist == (1, -2)
    with pytest.raises(ValueError):
        Domain("Plane", (1, 0))


@pytest.mark.parametrize(
    "face, u, expect",
    [
        ("C1", (1, 1), {"D12": 1, "D13": 1}),
        ("C1", (2, 0), {"D12": 2, "D13": 0}),
        ("C2", (-2, 1), {"D12": 1, "D23": 1}),
        ("C2", (-1, 0), {"D12": 1, "D23": 0}),
        ("C3", (1, -2), {"D13": 1, "D23": 1}),
        ("C3", (0, -1), {"D13": 1, "D23": 0}),
        ("S12", (1, 1), {"Lfiber": 1, "D123": 1}),
        ("S12", (-3, 0), {"Lfiber": -3, "D123": 0}),
        ("S13", (1, 2), {"Lfiber": 2, "D123": 1}),
        ("S23", (-1, 0), {"Lfiber": 0, "D123": 1}),
        ("S23", (1, -1), {"Lfiber": -1, "D123": 0}),
        ("INT", (3, -1), {"L12": 3, "L13": -1}),
    ],
)
def test_contact_data(face, u, expect):
    assert contact_data(face, u) == expect


@pytest.mark.parametrize("face, u", [("C1", (-1, 0)), ("C2", (1, 0)), ("C3", (0, 1)), ("S12", (0, -1)),
                                     ("S23", (1, 0))])
def test_contact_leaving_triangle(face, u):
    with pytest.raises(InvalidContactError):
        contact_data(face, u)


def test_side_frames_unimodular():
    for s in ("S12", "S13", "S23"):
        a, b = side_frame(s)
        assert abs(wedge(a, b)) == 1


def test_contact_key_drops_zeros():
    assert ContactData(D12=1, D13=0).key() == (("D12", 1),)
