"""Tests for gnuplot script generation."""

from quench_lab.models.fits import LogFit
from quench_lab.services.plot_scripts import gnuplot_formatter


class TestGnuplotScriptFormatter:
    """Test script text."""

    def test_histogram_without_fit(self):
        """Test the script plots the CSV into a PNG of the same stem."""
        script = gnuplot_formatter.format_histogram("hist_phase.csv", "phi")
        assert "set output 'hist_phase.png'" in script
        assert "plot 'hist_phase.csv' skip 1 using 1:2" in script
        assert "kappa" not in script

    def test_histogram_with_fit(self):
        """Test the fit overlay is restricted to its window."""
        fit = LogFit(
            kappa=-0.1, offset=0.2, window=(0.01, 0.3), residual=0.0, n_bins_used=9
        )
        script = gnuplot_formatter.format_histogram("hist_x.csv", "x", fit=fit)
        assert "kappa = -0.1" in script
        assert "fit_lo = 0.01" in script
        assert "fit_hi = 0.3" in script
        assert "f(x) with lines" in script

    def test_log_axis(self):
        """Test the log-x variant plots |x|."""
        script = gnuplot_formatter.format_histogram("hist_p.csv", "p", log_x=True)
        assert "set logscale x" in script
        assert "using (abs($1)):2" in script

    def test_sweep(self):
        """Test sweep scripts read the companion CSV."""
        script = gnuplot_formatter.format_sweep("sweep.json", "K")
        assert "plot 'sweep.csv' skip 1 using 1:2" in script
        assert "set xlabel 'K'" in script
        assert script.endswith("\n")
