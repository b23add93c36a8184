"""Host resource snapshot recorded in run metadata."""

import psutil

from quench_lab.models.common import HostMetrics


def host_metrics() -> HostMetrics:
    """Collect CPU, memory and load figures for the current host."""
    memory = psutil.virtual_memory()
    try:
        load_avg = list(psutil.getloadavg())
    except (AttributeError, OSError):
        # No load average on some platforms
        load_avg = [0.0, 0.0, 0.0]

    logical = psutil.cpu_count() or 1
    return HostMetrics(
        cpu_count_physical=psutil.cpu_count(logical=False) or logical,
        cpu_count_logical=logical,
        memory_total_gb=round(memory.total / (1024**3), 2),
        memory_percent=round(memory.percent, 1),
        load_average=[round(avg, 2) for avg in load_avg],
        rss_mb=round(psutil.Process().memory_info().rss / (1024**2), 1),
    )
