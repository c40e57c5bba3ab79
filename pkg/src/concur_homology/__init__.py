"""Homology of labelled asynchronous transition systems and Petri nets."""

from .bisim import (
    Span,
    SystemMorphism,
    Verdict,
    certify_bisimilar,
    check_Q_surjectivity,
    identity_morphism,
    is_open,
    refute_bisimilar,
    validate_morphism,
)
from .construct import fixture_scheme, petri_from_scheme, verify_construction
from .errors import (
    AlphabetMismatch,
    ConcurHomologyError,
    FiringError,
    InputError,
    LimitExceeded,
    NotReachableError,
    StateLimitExceeded,
    TokenLimitExceeded,
)
from .homology import (
    HomologySignature,
    SimplicialScheme,
    barycentric_subdivision,
    boundary_matrix,
    homology,
    ordered_simplices,
    scheme_of_system,
)
from .lts import (
    AsyncSystem,
    LabelledAsyncSystem,
    act,
    enumerate_Q,
    reachable_layers,
    residual,
    validate_system,
)
from .petri import (
    LabelledPetriNet,
    Limits,
    Marking,
    PetriNet,
    async_of_net,
    enabled,
    fire,
    homology_of_net,
    net_independence,
)
from .smith import IntegerMatrix, SmithForm, smith_normal_form

__version__ = "0.1.0"
