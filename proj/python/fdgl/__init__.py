"""Lambda values, classification and certified bounds for finite dynamical groups."""

import json

from ._core import (
    CapacityError,
    NotPeriodicError,
    certified_decimal,
    classify_json,
    euler_phi,
    evaluate,
    expand,
    factor,
    first_primitive,
    l_group,
    lambda_aff_group,
    lambda_group,
    lcg_certify,
    lcg_stream,
    measured_period_lcg,
    measured_period_vec,
    poly_is_irreducible,
    poly_is_primitive,
    poly_order,
    primitive_roots,
    rho0,
    rho1,
    vec_stream,
)


def classify(rho):
    """Classification of rho ("a/b") as the version 1 JSON document."""
    return json.loads(classify_json(str(rho)))


def lambda_of(spec):
    return evaluate(spec)["lambda"]
