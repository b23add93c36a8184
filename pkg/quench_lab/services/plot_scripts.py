"""gnuplot script generation for histogram artifacts."""

import logging
from typing import Optional

from quench_lab.models.fits import LogFit

logger = logging.getLogger(__name__)


class GnuplotScriptFormatter:
    """Formats ready-to-run gnuplot scripts that reference run CSVs."""

    def format_histogram(
        self,
        csv_name: str,
        xlabel: str,
        fit: Optional[LogFit] = None,
        log_x: bool = False,
        title: Optional[str] = None,
    ) -> str:
        """
        Script plotting one ``hist_*.csv`` file, optionally with its log fit.

        Args:
            csv_name: CSV file name relative to the run directory
            xlabel: Axis label for the observable
            fit: Fit to overlay as kappa*log|x| + offset
            log_x: Plot against |x| on a logarithmic axis
            title: Plot title; defaults to the CSV stem

        Returns:
            str: gnuplot script text
        """
        stem = csv_name.rsplit(".", 1)[0]
        lines = [
            f"# {stem}",
            "set datafile separator ','",
            "set terminal pngcairo size 800,600",
            f"set output '{stem}.png'",
            f"set title '{title or stem}' noenhanced",
            f"set xlabel '{xlabel}' noenhanced",
            "set ylabel 'density'",
        ]
        x_expr = "(abs($1))" if log_x else "1"
        if log_x:
            lines.append("set logscale x")
        plot = [
            f"'{csv_name}' skip 1 using {x_expr}:2 "
            "with points pt 7 ps 0.4 title 'data'"
        ]

        if fit is not None:
            lines.append(f"kappa = {fit.kappa!r}")
            lines.append(f"offset = {fit.offset!r}")
            v_min, v_max = fit.window
            lines.append(f"fit_lo = {v_min!r}")
            lines.append(f"fit_hi = {v_max!r}")
            lines.append(
                "f(x) = (abs(x) >= fit_lo && abs(x) <= fit_hi) "
                "? kappa*log(abs(x)) + offset : 1/0"
            )
            plot.append(f"f(x) with lines lw 2 title 'kappa = {fit.kappa:.4g}'")
            lines.append("set samples 2000")

        lines.append("plot " + ", \\\n     ".join(plot))
        script = "\n".join(lines) + "\n"

        logger.debug(
            "Formatted gnuplot script",
            extra={"csv": csv_name, "has_fit": fit is not None},
        )
        return script

    def format_sweep(self, json_name: str, parameter: str) -> str:
        """Script plotting kappa (and the law, if present) from sweep.json.

        gnuplot cannot read JSON, so the script expects a companion
        ``sweep.csv`` that the runner writes next to it.
        """
        csv_name = json_name.rsplit(".", 1)[0] + ".csv"
        return "\n".join(
            [
                "# kappa sweep",
                "set datafile separator ','",
                "set datafile missing 'nan'",
                "set terminal pngcairo size 800,600",
                "set output 'sweep.png'",
                f"set xlabel '{parameter}' noenhanced",
                "set ylabel 'kappa'",
                f"plot '{csv_name}' skip 1 using 1:2 with linespoints title 'fit', \\",
                f"     '{csv_name}' skip 1 using 1:3 with lines dt 2 title 'law'",
            ]
        ) + "\n"


# Global formatter instance
gnuplot_formatter = GnuplotScriptFormatter()
