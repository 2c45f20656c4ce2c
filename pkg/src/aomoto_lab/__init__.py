"""Exact-arithmetic tools for weighted hyperplane arrangements.

Subpackage map:

* ``exactfield``   -- rational scalars, rational functions in kappa, big complex floats
* ``arrangement``  -- weighted arrangements and their intersection lattices
* ``flags``        -- flag spaces, the duality pairing and the contravariant form
* ``aomoto``       -- the twisted logarithmic complex and the weight-diagonal map
* ``logforms``     -- pointwise exterior calculus for identity verification
* ``liealg``       -- root data, sl2 representations, invariants and conformal blocks
* ``svmap``        -- the hypergeometric solution vector and its top-form expansion
* ``kz``           -- the KZ connection, parallel transport and contour monodromy
* ``cli``          -- the ``aomoto-lab`` command line front end
"""

__version__ = "0.1.0"
