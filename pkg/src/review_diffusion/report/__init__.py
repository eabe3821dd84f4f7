from .anonymize import Pseudonymizer, anonymize
from .svg import leaf_components, render_cdf, render_circular
from .tables import (
    COMPONENTS_FILENAME,
    LINKED_RATIO_FILENAME,
    SIMILARITIES_FILENAME,
    SUMMARY_FILENAME,
    export_csv,
    read_components_csv,
    read_similarities_csv,
    read_summary_csv,
    write_components_csv,
    write_linked_ratio_csv,
    write_similarities_csv,
    write_summary_csv,
)

__all__ = [
    "COMPONENTS_FILENAME",
    "LINKED_RATIO_FILENAME",
    "SIMILARITIES_FILENAME",
    "SUMMARY_FILENAME",
    "Pseudonymizer",
    "anonymize",
    "export_csv",
    "leaf_components",
    "read_components_csv",
    "read_similarities_csv",
    "read_summary_csv",
    "render_cdf",
    "render_circular",
    "write_components_csv",
    "write_linked_ratio_csv",
    "write_similarities_csv",
    "write_summary_csv",
]
