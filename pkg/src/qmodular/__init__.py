"""Exact q-expansion arithmetic for classical modular objects.

Subpackages:

* :mod:`qmodular.qseries` -- exact truncated power series with
  fractional exponent offsets, the substrate for everything else;
* :mod:`qmodular.forms` -- eta/discriminant expansions, tau, the
  weight-12 Eisenstein series, Hecke operators and eigenform checks;
* :mod:`qmodular.theta_partitions` -- theta series, partition counts,
  Dyson rank tables, the two-variable rank generating series and the
  mock theta series f(q);
* :mod:`qmodular.lseries` -- Dirichlet series, Euler products, the
  completed-integral values Lambda(s), and critical-line zeta zeros;
* :mod:`qmodular.geometry` -- perimeter-preserving elliptic sections,
  torus terms, holomorphic/shadow decomposition;
* :mod:`qmodular.verify` / :mod:`qmodular.cli` -- verification suites
  and the command-line front end.
"""

from .qseries import (
    QSeries,
    WindowError,
    add,
    euler_product,
    invert,
    make_series,
    mul,
    pow,
    scalar_mul,
)
from .forms import (
    CosetRep,
    EigenPair,
    FormMeta,
    delta,
    eisenstein_e12,
    eta,
    tau,
)
from .theta_partitions import (
    OmegaPoly,
    RankTable,
    mock_theta_f,
    partition_count,
    rank_generating,
    rank_table,
    theta_diagonal,
    unary_theta,
)
from .lseries import (
    CompletedLValue,
    DirichletSeries,
    ZeroList,
    completed_lambda_integral,
    dirichlet_eval,
    euler_product_coeffs,
    mellin_coeffs,
    zeta_zero_spacings,
)
from .geometry import (
    EllipseSpec,
    TorusTerm,
    circle_matching_ellipse,
    ellipse_perimeter,
    elliptic_form_term,
    torus_term,
    weak_maass_series,
)

__version__ = "0.1.0"
