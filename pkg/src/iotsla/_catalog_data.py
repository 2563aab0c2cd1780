"""Builtin vocabulary rows.

One tuple per term:
    (term, value_type, canonical_unit, direction, aggregator, kind, description)

Kept as plain data so the whole catalog is reviewable at a glance; the
public types live in :mod:`iotsla.vocabulary`.
"""

from __future__ import annotations

QOS = "qos_metric"
CONF = "configuration_parameter"

HIGHER = "higher_is_better"
LOWER = "lower_is_better"
TARGET = "target_equality"
NONE = "none"

IOT_DEVICE_ROWS = (
    ("device_accuracy", "numeric", "percent", HIGHER, "mean", QOS,
     "How closely the device's readings reflect the real events it observes."),
    ("device_precision", "numeric", "percent", HIGHER, "mean", QOS,
     "How consistently the device reproduces the same reading for the same event."),
    ("type_of_device", "text", "dimensionless", NONE, "none", CONF,
     "Device category, e.g. a sensor or an RFID tag."),
    ("number_of_devices", "numeric", "count", NONE, "none", CONF,
     "How many devices are deployed."),
    ("mobility_of_devices", "enumerated", "dimensionless", NONE, "none", CONF,
     "Whether the device is fixed or mobile; mobility affects network coverage."),
    ("communication_mechanism", "enumerated", "dimensionless", NONE, "none", CONF,
     "How data moves to or from the next layer: push, pull, or both, "
     "implemented in hardware, software, or both."),
    ("communication_technology", "text", "dimensionless", NONE, "none", CONF,
     "Communication protocols the device supports, e.g. wifi or bluetooth."),
    ("battery_life", "numeric", "time_unit", HIGHER, "mean", QOS,
     "Expected battery performance, e.g. run time on a full charge or "
     "charge cycles until end of useful life."),
    ("warranty_period", "numeric", "time_unit", HIGHER, "none", CONF,
     "Period during which a faulty device can be returned or exchanged."),
    ("storage_size", "numeric", "bytes", HIGHER, "none", CONF,
     "On-device storage available for data."),
    ("memory_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Maximum or minimum amount of memory the device offers."),
    ("cpu_capacity", "numeric", "hz", HIGHER, "none", CONF,
     "Processor capability: operations the CPU can perform per unit time."),
)

EDGE_RESOURCE_ROWS = (
    ("availability", "numeric", "percent", HIGHER, "ratio", QOS,
     "Share of time the resource is functioning as expected and ready for "
     "use, relative to its total run time."),
    ("type_of_device", "text", "dimensionless", NONE, "none", CONF,
     "Edge device category, e.g. mobile, single-board computer, or server."),
    ("gateway_throughput", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Amount of data transferred through the gateway per second."),
    ("gateway_delay", "numeric", "time_unit", LOWER, "max", QOS,
     "Delay incurred while collecting data from the attached nodes."),
    ("publishing_rate", "numeric", "hz", NONE, "none", CONF,
     "When and how often buffered data is pushed onwards."),
    ("number_of_devices", "numeric", "count", NONE, "none", CONF,
     "Total number of devices within the edge infrastructure."),
    ("mobility_of_devices", "enumerated", "dimensionless", NONE, "none", CONF,
     "Whether the resource is fixed or mobile; mobility affects network coverage."),
    ("communication_mechanism", "enumerated", "dimensionless", NONE, "none", CONF,
     "How data is pushed to or pulled from the next layer, in hardware, "
     "software, or both."),
    ("communication_technology", "text", "dimensionless", NONE, "none", CONF,
     "Protocols supported when communicating with other devices."),
    ("storage_buffer_size", "numeric", "bytes", HIGHER, "none", CONF,
     "Buffer or storage available to hold data while throughput is limited "
     "or until delivery is confirmed."),
    ("memory_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Maximum or minimum amount of memory the resource can have."),
    ("cpu_capacity", "numeric", "hz", HIGHER, "none", CONF,
     "Processor capability: operations the CPU can perform per unit time."),
)

CLOUD_RESOURCE_ROWS = (
    ("availability", "numeric", "percent", HIGHER, "ratio", QOS,
     "Share of time the resource is functioning as expected and ready for "
     "use, relative to its total run time."),
    ("cpu_utilization", "numeric", "percent", HIGHER, "mean", QOS,
     "Percentage of the provisioned CPU capacity that is in use."),
    ("outage_length", "numeric", "time_unit", LOWER, "max", QOS,
     "How long the resource stays unavailable when it fails."),
    ("throughput", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Data transfer rate to and from the resource per second."),
    ("storage_size", "numeric", "bytes", HIGHER, "none", CONF,
     "Disc space available for data storage."),
    ("storage_bandwidth", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Capacity to transfer data between a service and its storage."),
    ("storage_type", "text", "dimensionless", NONE, "none", CONF,
     "Kind of storage backing the resource, e.g. local SSD or local HDD."),
    ("input_output_storage_operations", "numeric", "count", HIGHER, "none", CONF,
     "Number of input/output operations provisioned for the storage."),
    ("access_protocols", "text", "dimensionless", NONE, "none", CONF,
     "Protocols available for accessing the resource."),
    ("memory_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Maximum or minimum memory a machine can have, or the memory a "
     "program needs in order to run."),
    ("network_bandwidth", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Network speed among the internal service nodes."),
    ("vcpu_capacity", "numeric", "hz", HIGHER, "none", CONF,
     "Capacity of each virtual CPU: operations it can perform per unit time."),
    ("num_vcpus", "numeric", "count", HIGHER, "none", CONF,
     "Number of virtual CPUs per virtual machine."),
    ("num_cores_per_vm", "numeric", "count", HIGHER, "none", CONF,
     "Number of cores per virtual machine."),
    ("vertical_scale_down_limit", "numeric", "count", NONE, "none", CONF,
     "Minimum number of CPUs to shrink to when scaling is not automatic."),
    ("vertical_scale_up_limit", "numeric", "count", NONE, "none", CONF,
     "Maximum number of CPUs to grow to when scaling is not automatic."),
    ("horizontal_scale_up_limit", "numeric", "count", NONE, "none", CONF,
     "Maximum number of machines to grow to when scaling is not automatic."),
    ("horizontal_scale_down_limit", "numeric", "count", NONE, "none", CONF,
     "Minimum number of machines to shrink to when scaling is not automatic."),
    ("replication_factor", "numeric", "count", NONE, "none", CONF,
     "Number of copies of the data the cluster maintains."),
)

SENSING_ROWS = (
    ("availability", "numeric", "percent", HIGHER, "ratio", QOS,
     "Share of time the service is functioning as expected, relative to "
     "its total run time."),
    ("data_freshness", "numeric", "time_unit", LOWER, "max", QOS,
     "Age of sensed data at the moment it is used; capture and delivery "
     "are not always real time."),
    ("sampling_rate", "numeric", "hz", HIGHER, "mean", CONF,
     "Rate at which a sensor measures the observed phenomenon, e.g. a "
     "heart rate sensor sampling at 5 hz; criticality dictates the rate."),
    ("data_accuracy", "numeric", "percent", LOWER, "ratio", QOS,
     "Error rate of the sensed data, e.g. the average number of erroneous "
     "readings over a period."),
    ("data_integrity", "numeric", "percent", HIGHER, "mean", QOS,
     "Degree to which the data is maintained unaltered."),
    ("data_type", "text", "dimensionless", NONE, "none", CONF,
     "What is captured, e.g. temperature or humidity."),
)

NETWORKING_ROWS = (
    ("availability", "numeric", "percent", HIGHER, "ratio", QOS,
     "Share of time the network is fully operational and usable."),
    ("link_bandwidth", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Maximum amount of data that can be transferred through a link per second."),
    ("network_delay", "numeric", "time_unit", LOWER, "max", QOS,
     "Delay in data transmission across the network."),
    ("data_in_rate", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Amount of incoming data per unit time."),
    ("data_out_rate", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Amount of outgoing data per unit time."),
    ("jitter", "numeric", "ms", LOWER, "max", QOS,
     "Variance of the delay between data packets on the network, in "
     "milliseconds."),
    ("packet_loss_rate", "numeric", "percent", LOWER, "ratio", QOS,
     "Packets lost in transmission as a share of packets sent."),
    ("data_integrity", "numeric", "percent", HIGHER, "mean", QOS,
     "Degree to which data crosses the network unaltered."),
)

INGESTION_ROWS = (
    ("availability", "numeric", "percent", HIGHER, "ratio", QOS,
     "Share of time the ingestion service is functioning as expected."),
    ("throughput", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Amount of data moved through the messaging platform per second."),
    ("latency", "numeric", "time_unit", LOWER, "max", QOS,
     "Time to process a single transaction before forwarding it to its "
     "destination."),
    ("data_in_rate", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Amount of incoming data per unit time."),
    ("data_out_rate", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Amount of data output per unit time."),
    ("data_retention_time_limit", "numeric", "time_unit", NONE, "none", CONF,
     "How long data may be kept in the ingestion layer before deletion."),
    ("publishing_rate", "numeric", "hz", NONE, "none", CONF,
     "Rate at which data is sent to the message broker."),
    ("storage_size", "numeric", "bytes", HIGHER, "none", CONF,
     "Storage available to hold data under throughput limits, until "
     "delivery is confirmed, or for the retention period."),
    ("replication_factor", "numeric", "count", NONE, "none", CONF,
     "How many replicas of the ingested data are kept."),
    ("data_compression_support", "boolean", "dimensionless", TARGET, "none", CONF,
     "Whether data can be compressed and decompressed on demand."),
    ("data_encryption_support", "boolean", "dimensionless", TARGET, "none", CONF,
     "Whether data can be encrypted and decrypted on demand."),
    ("delivery_guarantee_mechanism", "enumerated", "dimensionless", NONE, "none", CONF,
     "Delivery guarantee in effect: at_most_once, at_least_once, or "
     "exactly_once; acknowledgement traffic adds workload."),
    ("data_integrity", "numeric", "percent", HIGHER, "mean", QOS,
     "Degree to which ingested data is maintained unaltered."),
    ("name_of_ingestion_framework", "text", "dimensionless", NONE, "none", CONF,
     "Ingestion framework to use, e.g. rabbitmq, kinesis_firehose, flume, "
     "or scribe."),
)

STREAM_PROCESSING_ROWS = (
    ("throughput", "numeric", "bytes_per_s", HIGHER, "mean", QOS,
     "Stream volume processed per second."),
    ("latency", "numeric", "time_unit", LOWER, "max", QOS,
     "Time to process a single transaction in the stream processor."),
    ("data_completeness", "numeric", "percent", HIGHER, "mean", QOS,
     "Percentage of the incoming stream actually used to compute query "
     "results, e.g. when load shedding samples the input."),
    ("miss_ratio", "numeric", "percent", LOWER, "ratio", QOS,
     "Percentage of queries not finished within their deadlines."),
    ("time_based_window_size", "numeric", "time_unit", NONE, "none", CONF,
     "Window length, in time, for processing the data falling inside it."),
    ("event_based_window_size", "numeric", "count", NONE, "none", CONF,
     "Window length as a number of events, records, or messages."),
    ("sliding_window", "numeric", "dimensionless", NONE, "none", CONF,
     "Window length plus the slice consumed each time the window moves; "
     "successive windows may overlap. Time based, count based, or hybrid."),
    ("tumbling_window", "numeric", "dimensionless", NONE, "none", CONF,
     "Fixed-size, non-overlapping, contiguous processing intervals."),
    ("micro_batch_size", "numeric", "bytes", NONE, "none", CONF,
     "How much data is buffered before being processed as a small batch."),
    ("data_arrival_rate", "numeric", "hz", NONE, "none", CONF,
     "Expected number of data points received per second."),
    ("write_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Capacity for writing in one step."),
    ("read_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Capacity for reading in one step."),
    ("replication_factor", "numeric", "count", NONE, "none", CONF,
     "How many replicas of the stream state are kept."),
    ("total_number_of_queries", "numeric", "count", NONE, "none", CONF,
     "How many standing queries should be considered."),
    ("data_compression_support", "boolean", "dimensionless", TARGET, "none", CONF,
     "Whether data can be compressed and decompressed on demand."),
    ("data_encryption_support", "boolean", "dimensionless", TARGET, "none", CONF,
     "Whether data can be encrypted and decrypted on demand."),
    ("data_integrity", "numeric", "percent", HIGHER, "mean", QOS,
     "Degree to which in-flight data is maintained unaltered."),
    ("name_of_stream_processing_framework", "text", "dimensionless", NONE, "none", CONF,
     "Stream processing framework to use, e.g. spark_streaming or storm."),
)

BATCH_PROCESSING_ROWS = (
    ("throughput", "numeric", "hz", HIGHER, "mean", QOS,
     "Number of batches processed per second."),
    ("response_time", "numeric", "time_unit", LOWER, "max", QOS,
     "Time between submitting a batch job and receiving its response."),
    ("batch_size", "numeric", "bytes", NONE, "none", CONF,
     "Limit on the size of each submitted batch."),
    ("num_batch_jobs", "numeric", "count", NONE, "none", CONF,
     "Number of submitted batch jobs."),
    ("process_running_frequency", "numeric", "hz", NONE, "none", CONF,
     "How often the batch process runs, e.g. twice per hour."),
    ("max_memory_of_map_task", "numeric", "bytes", NONE, "none", CONF,
     "Memory assigned to each map task."),
    ("max_memory_of_reduce_task", "numeric", "bytes", NONE, "none", CONF,
     "Memory assigned to each reduce task."),
    ("num_mappers", "numeric", "count", NONE, "none", CONF,
     "Number of mappers to run."),
    ("num_reducers", "numeric", "count", NONE, "none", CONF,
     "Number of reducers to run."),
    ("write_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Capacity for writing in one step."),
    ("read_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Capacity for reading in one step."),
    ("replication_factor", "numeric", "count", NONE, "none", CONF,
     "How many replicas of the data are kept."),
    ("total_number_of_queries", "numeric", "count", NONE, "none", CONF,
     "How many queries should be considered."),
    ("data_compression_support", "boolean", "dimensionless", TARGET, "none", CONF,
     "Whether data can be compressed and decompressed on demand."),
    ("data_encryption_support", "boolean", "dimensionless", TARGET, "none", CONF,
     "Whether data can be encrypted and decrypted on demand."),
    ("data_integrity", "numeric", "percent", HIGHER, "mean", QOS,
     "Degree to which stored inputs and results stay unaltered."),
    ("name_of_batch_processing_framework", "text", "dimensionless", NONE, "none", CONF,
     "Batch processing framework to use, e.g. hadoop."),
)

MACHINE_LEARNING_ROWS = (
    ("accuracy", "numeric", "percent", HIGHER, "mean", QOS,
     "Accuracy of the analysis results."),
    ("class_of_ml", "enumerated", "dimensionless", NONE, "none", CONF,
     "Class the algorithm belongs to: supervised (classification, "
     "regression) or unsupervised (clustering, association)."),
    ("name_of_ml_algorithm", "text", "dimensionless", NONE, "none", CONF,
     "Specific algorithm required, e.g. logistic_regression, "
     "neural_network, svm, kmeans, or naive_bayes."),
    ("way_to_run_ml_algorithm", "enumerated", "dimensionless", NONE, "none", CONF,
     "Execution style for the algorithm, e.g. sequential or mapreduce."),
    ("data_integrity", "numeric", "percent", HIGHER, "mean", QOS,
     "Degree to which training and input data stay unaltered."),
)

DATABASE_ROWS = (
    ("throughput", "numeric", "hz", HIGHER, "mean", QOS,
     "Queries processed per second."),
    ("response_time", "numeric", "time_unit", LOWER, "max", QOS,
     "Time between sending a request and receiving the response."),
    ("type_of_database", "enumerated", "dimensionless", NONE, "none", CONF,
     "Database family, e.g. sql or nosql."),
    ("type_of_nosql", "enumerated", "dimensionless", NONE, "none", CONF,
     "NoSQL flavour: key_value, document, graph, or column based."),
    ("read_error_rate", "numeric", "hz", LOWER, "ratio", QOS,
     "Errors hit on read attempts, per unit time."),
    ("cache_hit_ratio", "numeric", "percent", HIGHER, "ratio", QOS,
     "Cache hits relative to lookups; a hit finds the requested data "
     "already in cache memory."),
    ("write_error_rate", "numeric", "hz", LOWER, "ratio", QOS,
     "Errors hit on write attempts, per unit time."),
    ("write_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Capacity for writing in one step."),
    ("read_capacity", "numeric", "bytes", HIGHER, "none", CONF,
     "Capacity for reading in one step."),
    ("replication_factor", "numeric", "count", NONE, "none", CONF,
     "Number of copies of the data the database keeps."),
    ("compression_support", "boolean", "dimensionless", TARGET, "none", CONF,
     "Whether stored data can be compressed and decompressed on demand."),
    ("data_encryption_support", "boolean", "dimensionless", TARGET, "none", CONF,
     "Whether stored data can be encrypted and decrypted on demand."),
    ("data_integrity", "numeric", "percent", HIGHER, "mean", QOS,
     "Degree to which stored data stays unaltered."),
)

ROWS_BY_CONCEPT = {
    "iot_device": IOT_DEVICE_ROWS,
    "edge_resource": EDGE_RESOURCE_ROWS,
    "cloud_resource": CLOUD_RESOURCE_ROWS,
    "sensing": SENSING_ROWS,
    "networking": NETWORKING_ROWS,
    "ingestion": INGESTION_ROWS,
    "stream_processing": STREAM_PROCESSING_ROWS,
    "batch_processing": BATCH_PROCESSING_ROWS,
    "machine_learning": MACHINE_LEARNING_ROWS,
    "database": DATABASE_ROWS,
}

# concept -> canonical term -> aliases.  The alias set is deliberately
# small: each entry records a second name genuinely used for the same
# quantity, not a synonym dictionary.
ALIASES = {
    ("sensing", "sampling_rate"): ("sampling_frequency",),
    ("edge_resource", "storage_buffer_size"): ("buffer_size",),
    ("cloud_resource", "input_output_storage_operations"): ("io_storage_operations",),
    ("database", "response_time"): ("query_response_time",),
}

# Metrics meaningful for the application as a whole rather than any single
# service or resource.  Kept out of the per-concept tables above so that
# exports stay a faithful inventory of those tables.
APPLICATION_ROWS = (
    ("end_to_end_response_time", "numeric", "time_unit", LOWER, "max", QOS,
     "Time from data capture to the application's response, accumulated "
     "across the activity pipeline."),
    ("availability", "numeric", "percent", HIGHER, "ratio", QOS,
     "Share of time the application as a whole is functioning and usable."),
    ("accuracy", "numeric", "percent", HIGHER, "mean", QOS,
     "Accuracy of the application's outputs, e.g. of detected events of "
     "interest."),
)
