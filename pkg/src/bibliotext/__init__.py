"""Bibliometric text-analysis workbench.

Core engine behind the CLI (``bibliotext``) and the HTTP service
(``bibliotext.service``): bibliographic export ingestion, per-analysis
capability checking, keyword normalization, topic modeling, association-rule
networks, and sunburst hierarchy computation.
"""

__version__ = "0.1.0"
