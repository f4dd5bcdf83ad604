"""Family dispatch: recipe family name -> rendering function."""

from fam_curves import plot_curves
from fam_density import plot_density, read_loci  # noqa: F401  (read_loci re-exported)
from fam_profiles import plot_profile
from fam_scans import plot_t2_scan

FAMILIES = {
    "curves": plot_curves,
    "profile": plot_profile,
    "density": plot_density,
    "gap_density": plot_density,
    "t2_scan": plot_t2_scan,
}
