import numpy as np
import pytest

from lptail import (
    DomainError,
    Pareto,
    PriceSeries,
    RngStream,
    load_price_csv,
    log_losses,
    rolling_estimates,
    write_rolling_csv,
)

PAIRS = ((2.0, 1.0), (2.2, 1.5), (2.4, 2.0))


def write_csv(path, rows, header="date,adjusted_close"):
    path.write_text(header + "\n" + "\n".join(rows) + "\n")


class TestLoadPriceCsv:
    def test_two_rows(self, tmp_path):
        p = tmp_path / "px.csv"
        write_csv(p, ["2020-01-03,100.5", "2020-01-10,101.25"])
        series = load_price_csv(p)
        assert len(series) == 2
        assert series.prices[1] == 101.25

    def test_missing_price_dropped_with_warning(self, tmp_path):
        p = tmp_path / "px.csv"
        rows = [f"2020-01-{d:02d},{100 + d}" for d in range(1, 11)]
        rows[4] = "2020-01-05,"
        write_csv(p, rows)
        with pytest.warns(UserWarning, match="dropped 1"):
            series = load_price_csv(p)
        assert len(series) == 9

    def test_out_of_order_dates_name_the_line(self, tmp_path):
        p = tmp_path / "px.csv"
        write_csv(p, ["2020-01-10,100", "2020-01-03,101"])
        with pytest.raises(DomainError, match=":3"):
            load_price_csv(p)

    def test_malformed_number_names_the_line(self, tmp_path):
        p = tmp_path / "px.csv"
        write_csv(p, ["2020-01-03,100", "2020-01-10,abc"])
        with pytest.raises(DomainError, match=":3"):
            load_price_csv(p)

    def test_malformed_date(self, tmp_path):
        p = tmp_path / "px.csv"
        write_csv(p, ["01/03/2020,100"])
        with pytest.raises(DomainError, match="date"):
            load_price_csv(p)

    def test_header_required(self, tmp_path):
        p = tmp_path / "px.csv"
        write_csv(p, ["2020-01-03,100"], header="day,close")
        with pytest.raises(DomainError, match="header"):
            load_price_csv(p)


class TestLogLosses:
    def test_constant_prices_give_zero(self):
        import datetime as dt
        series = PriceSeries(
            dates=tuple(dt.date(2020, 1, d) for d in range(1, 6)),
            prices=np.full(5, 42.0),
        )
        losses = log_losses(series)
        assert len(losses) == 4
        assert np.all(losses.values == 0.0)

    def test_hand_values(self):
        import datetime as dt
        series = PriceSeries(
            dates=(dt.date(2020, 1, 1), dt.date(2020, 1, 2), dt.date(2020, 1, 3)),
            prices=np.array([100.0, 90.0, 99.0]),
        )
        losses = log_losses(series)
        assert losses.values[0] == pytest.approx(-np.log(0.9), rel=1e-12)
        assert losses.values[1] == pytest.approx(-np.log(1.1), rel=1e-12)
        assert losses.values[1] < 0.0  # a gain is a negative loss

    def test_needs_two_prices(self):
        import datetime as dt
        series = PriceSeries(dates=(dt.date(2020, 1, 1),), prices=np.array([1.0]))
        with pytest.raises(DomainError):
            log_losses(series)


@pytest.fixture(scope="module")
def synthetic_losses():
    return Pareto(0.34).sample(2000, RngStream(606, 0))


class TestRollingEstimates:
    def test_row_count_identity(self, synthetic_losses):
        result = rolling_estimates(synthetic_losses, window=1800, k=80, pairs=PAIRS)
        assert len(result) == 2000 - 1800 + 1 == 201

    def test_single_window(self, synthetic_losses):
        result = rolling_estimates(synthetic_losses[:1800], window=1800, k=80, pairs=PAIRS)
        assert len(result) == 1

    def test_gamma_band(self, synthetic_losses):
        result = rolling_estimates(synthetic_losses, window=1800, k=80, pairs=PAIRS)
        half = 4.0 * 0.34 / np.sqrt(80)
        assert abs(np.mean(result.gamma_hat) - 0.34) < half

    def test_no_look_ahead(self, synthetic_losses):
        full = rolling_estimates(synthetic_losses, window=1800, k=80, pairs=PAIRS)
        prefix = rolling_estimates(synthetic_losses[:1900], window=1800, k=80, pairs=PAIRS)
        n = len(prefix)
        assert np.array_equal(full.gamma_hat[:n], prefix.gamma_hat)
        for name in full.column_names():
            assert np.array_equal(full.columns[name][:n], prefix.columns[name],
                                  equal_nan=True)

    def test_transition_columns_scale_invariant_through_prices(self, tmp_path, synthetic_losses):
        # build prices from the losses, rescale all prices, rerun end to end
        import datetime as dt
        losses = synthetic_losses[:1850] * 0.01
        prices = 100.0 * np.exp(-np.cumsum(np.concatenate([[0.0], losses])))
        base = dt.date(2000, 1, 3)
        rows = [f"{base + dt.timedelta(weeks=i)},{p:.17g}" for i, p in enumerate(prices)]
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(p1, rows)
        rows2 = [f"{base + dt.timedelta(weeks=i)},{7.3 * p:.17g}" for i, p in enumerate(prices)]
        write_csv(p2, rows2)
        r1 = rolling_estimates(log_losses(load_price_csv(p1)), window=1800, k=80, pairs=PAIRS)
        r2 = rolling_estimates(log_losses(load_price_csv(p2)), window=1800, k=80, pairs=PAIRS)
        for name in r1.column_names():
            if name.startswith("pi_"):
                a, b = r1.columns[name], r2.columns[name]
                both = np.isfinite(a) & np.isfinite(b)
                assert np.array_equal(np.isfinite(a), np.isfinite(b))
                assert np.max(np.abs(a[both] - b[both])) < 1e-10

    def test_q_one_identity_per_row(self, synthetic_losses):
        # with q = 1 the variant-3 column equals the qua-style closed form
        from lptail import Sample, hill, order_statistic_quantile, beta
        result = rolling_estimates(synthetic_losses, window=1800, k=80,
                                   pairs=((2.0, 1.0),))
        eps_n = 80 / 1800
        col = result.columns["theta_extram3_p2_q1"]
        for row in (0, 100, 200):
            window = Sample(synthetic_losses[row:row + 1800])
            g = hill(window, 80)
            anchor = order_statistic_quantile(window, eps_n)
            prefactor = (g / beta(2.0, 1.0 / g - 1.0)) ** -g
            expected = prefactor * (0.005 / eps_n) ** -g * anchor
            assert col[row] == pytest.approx(expected, rel=1e-12)

    def test_window_validation(self, synthetic_losses):
        with pytest.raises(DomainError):
            rolling_estimates(synthetic_losses[:100], window=1800, k=80, pairs=PAIRS)
        with pytest.raises(DomainError):
            rolling_estimates(synthetic_losses, window=1800, k=1800, pairs=PAIRS)

    def test_csv_output_shape(self, tmp_path, synthetic_losses):
        result = rolling_estimates(synthetic_losses[:1810], window=1800, k=80, pairs=PAIRS)
        out = tmp_path / "roll.csv"
        write_rolling_csv(result, out)
        lines = out.read_text().splitlines()
        assert len(lines) == 1 + 11
        header = lines[0].split(",")
        assert header[0] == "date" and header[1] == "gamma_hat"
        assert "pi_plugin_p2_q1" in header
        assert "pi_int_p2.2_q1.5" in header
        assert "theta_bm_p2.4" in header
        assert "theta_extram2_p2.4_q2" in header
