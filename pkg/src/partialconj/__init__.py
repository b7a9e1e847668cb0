"""Partial conjugation in Coxeter groups, G-stable and K-stable pieces, and affine Weyl groups of GL_n."""
from .adlv import AdlvHypothesisError, AdlvQuery, adlv_dim, adlv_nonempty, adlv_report, lowest_cell_member
from .affine import (
    AffineWeylGroup,
    ExtAffineElement,
    NewtonDatum,
    affine_group,
    defect,
    distinguished_class,
    eta,
    good_rep,
    is_distinguished,
    is_good,
    kappa,
    min_set,
    newton_to_element,
)
from .bnpair import FiniteGroupCtx, bruhat_label, lemma1_check, partial_conj_cover, verify_axioms
from .bruhat import PosetSlice, bruhat_leq
from .coxeter import CoxeterError, CoxeterSystem, WeylElement, make_system, preset, system_from_json
from .partial import (
    TwistSetting,
    count_glN_orbits,
    count_glN_pieces,
    i_set,
    leq_J_delta,
    orbit,
    pi_map,
    reduce_to_min,
    script_W,
    twisted_classes,
    two_sided_decomposition,
)
from .pieces import (
    PieceRecord,
    compactification_closure,
    compactification_pieces,
    group_piece_closure,
    group_pieces,
    k_pieces,
    specialize,
)

__version__ = "0.1.0"
