"""Exact tools for quadratic maps of the real plane and real-root certificates."""

from .cuboid import CuboidParams, CuboidWarning, cubic_param_transform, cuboid_char_eval, cuboid_char_poly
from .errors import (
    CertificateDisagreement,
    DegenerateFiber,
    DivisionByZero,
    MalformedInput,
    NotInvertibleError,
    PreconditionError,
    QuadPlaneError,
)
from .exactnum import Interval, Poly1, format_rational, parse_rational, poly_tools, rat_arith
from .maps import (
    AffineMap2,
    QuadMap,
    compose_source,
    compose_target,
    definite_canonical,
    indefinite_canonical,
    semidefinite_canonical,
    shear_map,
)
from .quadform import (
    FormClass,
    FormTag,
    FormTriple,
    classify_form,
    definite_case_vector,
    form_of,
    light_vectors,
    omega2_omega3,
)
from .quadmap import (
    InvertibilityVerdict,
    ReductionTranscript,
    Status,
    check_equivalence,
    decide_invertibility,
    invert,
    lattice_check,
    precanonicalize,
)
from .rootcert import (
    cubic_classify,
    cubic_disc_resolvent,
    cubic_discriminant,
    elimination_ladder,
    quartic_aux,
    quartic_discriminant,
    quartic_exactly_one_real,
    resolvent_disc_definite,
    resolvent_disc_indefinite,
)
from .sturm import RootCount, Witness, falsify, preimage_count, sturm_count

__version__ = "0.1.0"
