"""Tour of the vocabulary catalog: concepts, terms, aliases, and units.

Run:  python3 demos/catalog_tour.py
"""

from fractions import Fraction

from iotsla import (
    application_slo_terms,
    convert,
    load_builtin_catalog,
    units_convertible,
)


def main():
    catalog = load_builtin_catalog()

    print(f"The builtin catalog defines {len(catalog)} terms across "
          f"{len(catalog.concepts())} concepts:\n")
    for concept in catalog.concepts():
        entries = catalog.applicable_terms(concept)
        metrics = sum(1 for e in entries if e.kind == "qos_metric")
        params = len(entries) - metrics
        print(f"  {concept:<20} {len(entries):>3} terms "
              f"({metrics} metrics, {params} configuration parameters)")

    print("\nApplication-level SLOs use their own small pseudo-concept:")
    for entry in application_slo_terms():
        print(f"  {entry.term:<28} {entry.canonical_unit:<10} {entry.direction}")

    print("\nA term is looked up per concept, so the same word can mean "
          "different things:")
    for concept in ("ingestion", "batch_processing", "database"):
        entry = catalog.lookup("throughput", concept)
        print(f"  throughput @ {concept:<18} canonical unit {entry.canonical_unit}")

    print("\nSome terms have aliases from common usage:")
    entry = catalog.lookup("sampling_frequency", "sensing")
    print(f"  sampling_frequency (sensing) resolves to {entry.term!r}")
    entry = catalog.lookup("query_response_time", "database")
    print(f"  query_response_time (database) resolves to {entry.term!r}")

    print("\nUnits convert exactly inside one family:")
    print(f"  1.5 s      = {convert(Fraction(3, 2), 's', 'ms')} ms")
    print(f"  1 gib      = {convert(1, 'gib', 'bytes')} bytes")
    print(f"  99.95%     = {convert(Fraction(9995, 100), 'percent', 'ratio')} "
          "as a ratio")
    print("  but the abstract time_unit never converts to wall-clock units: "
          f"convertible(time_unit, ms) = {units_convertible('time_unit', 'ms')}")


if __name__ == "__main__":
    main()
