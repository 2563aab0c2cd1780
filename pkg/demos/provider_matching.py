"""Rank two provider offers against an agreement's ingestion requirements.

Run:  python3 demos/provider_matching.py
"""

import json

from iotsla import load_builtin_catalog, load_offer, parse, rank_offers, validate
from iotsla.matcher import decimal_str_or_fraction, render_report_table
from iotsla.model import concept_of_target

REQUEST = """\
sla "Ingestion Capacity Procurement" {
  id = procure
  application = smart_health
  starts = 2026-01-01
  ends = 2027-01-01
}
party buyer { name = "City Hospital Group" role = consumer }
party seller { name = "To Be Selected" role = provider }
slo app_floor on app { availability >= 99.9 percent }
slo ingest_terms on ingest_svc {
  latency <= 5 time_unit
  throughput >= 100 mb_per_s
  availability >= 99.95 percent
}
service ingest_svc : ingestion on cloud_vm { }
resource cloud_vm : cloud_resource { }
"""

OFFER_ALPHA = {
    "provider_id": "alpha",
    "concept": "ingestion",
    "capabilities": [
        {"metric": "latency", "value": 4, "unit": "time_unit"},
        {"metric": "throughput", "value": 200, "unit": "mb_per_s"},
        {"metric": "availability", "value": 99.99, "unit": "percent"},
    ],
}

OFFER_BETA = {
    "provider_id": "beta",
    "concept": "ingestion",
    "capabilities": [
        {"metric": "latency", "value": 6, "unit": "time_unit"},
        {"metric": "throughput", "value": 100, "unit": "mb_per_s"},
        # availability deliberately unspecified: absence of a guarantee
        # scores the same as a violated one
    ],
}


def main():
    catalog = load_builtin_catalog()
    doc = parse(REQUEST)
    assert validate(doc, catalog) == [], "the request must be clean"

    offers = [load_offer(json.dumps(raw), catalog)
              for raw in (OFFER_ALPHA, OFFER_BETA)]
    requirements = [
        constraint
        for slo in doc.all_slos()
        if concept_of_target(doc, slo.target) == "ingestion"
        for constraint in slo.constraints
    ]

    print("Requirements on the ingestion service:")
    for c in requirements:
        unit = f" {c.value.unit}" if c.value.unit else ""
        figure = decimal_str_or_fraction(c.value.value)
        print(f"  {c.metric} {c.comparator} {figure}{unit}")

    print("\nUnweighted ranking:")
    reports = rank_offers(requirements, offers, None, catalog)
    print(render_report_table(reports, requirements))

    print("\nAvailability weighted 3x, latency 2x:")
    weights = {"availability": 3, "latency": 2}
    reports = rank_offers(requirements, offers, weights, catalog)
    print(render_report_table(reports, requirements))

    print("\nA lower_is_better bound like latency <= guarantees delivery "
          "anywhere from 0 up to the figure;")
    print("a higher_is_better bound is a floor with unbounded overdelivery. "
          "A constraint counts as satisfied")
    print("only when it holds for every value the provider might deliver.")


if __name__ == "__main__":
    main()
