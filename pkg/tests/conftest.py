import mpmath as mp

# every reference computed in the tests uses 40 significant digits
mp.mp.dps = 40

import os

from hypothesis import settings

# HYPOTHESIS_PROFILE=thorough runs the property tests with many more examples
settings.register_profile("thorough", max_examples=2000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))
