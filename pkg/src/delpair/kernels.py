"""Backend selection for the polynomial kernel.

Imports the compiled extension when present, otherwise the pure-Python
twin.  Set ``DELPAIR_PURE=1`` in the environment to force the fallback
(used by the benchmark and by tests that compare the two lanes).
"""

import os

from . import _gfpoly_py as pure

if os.environ.get("DELPAIR_PURE"):
    impl = pure
    BACKEND = "python"
else:
    try:
        from . import _gfpoly_cy as impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        impl = pure
        BACKEND = "python"

norm = impl.norm
add = impl.add
sub = impl.sub
neg = impl.neg
smul = impl.smul
mul = impl.mul
divmod_ = impl.divmod_
rem = impl.rem
monic = impl.monic
gcd = impl.gcd
ext_gcd = impl.ext_gcd
inv_mod = impl.inv_mod
mulmod = impl.mulmod
powmod = impl.powmod
eval_at = impl.eval_at
