"""Detect an end-to-end response time breach in windowed telemetry.

Run:  python3 demos/violation_monitoring.py
"""

from iotsla import parse, validate
from iotsla.monitor import monitor_document, parse_telemetry

AGREEMENT = """\
sla "Remote Health Monitoring Service" {
  id = rhms
  application = smart_health
  starts = 2026-01-01
  ends = 2027-01-01
}
party hospital { name = "City Hospital Group" role = consumer }
party cloudco { name = "CloudCo Ltd" role = provider }
slo app_response on app { end_to_end_response_time <= 5 time_unit }
activity capture : capture_eoi requires hb_sensing
activity ingest : ingest_data requires ingest_svc
activity analyse_rt : small_scale_rt_analysis requires stream_svc
service hb_sensing : sensing on hb_sensor { sampling_rate = 5 hz }
service ingest_svc : ingestion on cloud_vm { replication_factor = 3 }
service stream_svc : stream_processing on cloud_vm {
  time_based_window_size = 60 time_unit
}
resource hb_sensor : iot_device { }
resource cloud_vm : cloud_resource { }
"""

# timestamp <TAB> target <TAB> metric <TAB> value [unit]
# Three 60-unit windows; in the third, one ingestion latency sample of 7
# pushes the end-to-end sum past the 5-unit ceiling.
TELEMETRY = "\n".join(
    f"{ts}\t{target}\t{metric}\t{value}"
    for ts, target, metric, value in [
        (5, "hb_sensing", "data_freshness", "1 time_unit"),
        (10, "ingest_svc", "latency", "2"),
        (15, "stream_svc", "latency", "1"),
        (65, "hb_sensing", "data_freshness", "1 time_unit"),
        (70, "ingest_svc", "latency", "2"),
        (75, "stream_svc", "latency", "1"),
        (125, "hb_sensing", "data_freshness", "1 time_unit"),
        (130, "ingest_svc", "latency", "2"),
        (135, "stream_svc", "latency", "1"),
        (165, "ingest_svc", "latency", "7"),
    ]
) + "\n"


def main():
    doc = parse(AGREEMENT)
    assert validate(doc) == [], "the agreement must be clean"

    records, skipped = parse_telemetry(TELEMETRY)
    print(f"read {len(records)} telemetry records ({skipped} skipped)\n")

    print("Per window, the end-to-end figure is the sum over workflow "
          "activities of the worst")
    print("time-family sample among that activity's services. Here the "
          "first two windows sum")
    print("to 1 + 2 + 1 = 4, inside the 5-unit ceiling.\n")

    report = monitor_document(doc, records)
    if not report.violations:
        print("no violations (unexpected for this demo)")
    for event in report.violations:
        c = event.constraint
        print(f"violation in window [{event.window_start},{event.window_end}): "
              f"{event.slo_id}")
        print(f"  required  {c.metric} {c.comparator} {c.value.value} "
              f"{c.value.unit}")
        print(f"  observed  {event.observed.value} {event.observed.unit} "
              "(= 1 + max(2, 7) + 1)")

    print(f"\nviolations per SLO: {report.slo_violation_counts}")


if __name__ == "__main__":
    main()
