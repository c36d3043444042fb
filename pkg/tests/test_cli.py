import numpy as np
import pytest
from click.testing import CliRunner

from adaptrobust import datagen, losses, mlp
from adaptrobust.cli import main, render_regions_svg
from adaptrobust.core import LabeledDataset, RandomStream
from adaptrobust.neighbors import NnClassifier

runner = CliRunner()


def run_ok(args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


# --- generate -------------------------------------------------------------------

def test_generate_writes_csv(tmp_path):
    out = tmp_path / "deep" / "nested"  # missing directories get created
    run_ok(["generate", "--shape", "circles", "--n", "1000", "--seed", "7",
            "--out", str(out), "--name", "g"])
    lines = (out / "g" / "data" / "dataset.csv").read_text().splitlines()
    assert len(lines) == 1001
    assert lines[0] == "x1,x2,label"
    assert (out / "g" / "config.echo").exists()


def test_generate_rerun_is_byte_identical(tmp_path):
    args = ["generate", "--shape", "sines", "--n", "200", "--seed", "3",
            "--out", str(tmp_path), "--name", "g"]
    run_ok(args)
    first = (tmp_path / "g" / "data" / "dataset.csv").read_bytes()
    run_ok(args)
    assert (tmp_path / "g" / "data" / "dataset.csv").read_bytes() == first


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n=50\nseed=9\n", encoding="utf-8")
    run_ok(["generate", "--shape", "boxes", "--config", str(cfg),
            "--out", str(tmp_path), "--name", "fromfile"])
    assert len((tmp_path / "fromfile" / "data" / "dataset.csv").read_text().splitlines()) == 51
    run_ok(["generate", "--shape", "boxes", "--config", str(cfg), "--n", "60",
            "--out", str(tmp_path), "--name", "flagwins"])
    assert len((tmp_path / "flagwins" / "data" / "dataset.csv").read_text().splitlines()) == 61


def test_env_var_output_root(tmp_path, monkeypatch):
    monkeypatch.setenv("ADAPTROBUST_OUT", str(tmp_path / "envroot"))
    run_ok(["generate", "--shape", "boxes", "--n", "10", "--name", "viaenv"])
    assert (tmp_path / "envroot" / "viaenv" / "data" / "dataset.csv").exists()


# --- augment --------------------------------------------------------------------

@pytest.fixture()
def dataset_csv(tmp_path):
    run_ok(["generate", "--shape", "circles", "--n", "200", "--seed", "1",
            "--out", str(tmp_path), "--name", "base"])
    return tmp_path / "base" / "data" / "dataset.csv"


def test_augment_adaptive_counts(dataset_csv, tmp_path):
    run_ok(["augment", "--data", str(dataset_csv), "--c", "0.6666666666666666",
            "--m", "4", "--out", str(tmp_path), "--name", "aug"])
    lines = (tmp_path / "aug" / "data" / "augmented.csv").read_text().splitlines()
    assert len(lines) == 1001  # header + 200 originals + 800 samples
    assert lines[0] == "x1,x2,label,origin"


def test_augment_fixed_radius_bound(dataset_csv, tmp_path):
    run_ok(["augment", "--data", str(dataset_csv), "--fixed-radius", "0.1",
            "--m", "2", "--out", str(tmp_path), "--name", "augf"])
    rows = (tmp_path / "augf" / "data" / "augmented.csv").read_text().splitlines()[1:]
    base, _ = datagen.load_csv(dataset_csv)
    for row in rows:
        *coords, label, origin = row.split(",")
        origin = int(origin)
        if origin >= 0:
            p = np.array([float(c) for c in coords])
            assert np.sqrt(np.sum((p - base.points[origin]) ** 2)) <= 0.1


def test_augment_requires_exactly_one_mode(dataset_csv, tmp_path):
    res = runner.invoke(main, ["augment", "--data", str(dataset_csv),
                               "--out", str(tmp_path)])
    assert res.exit_code != 0 and "exactly one" in res.output
    res = runner.invoke(main, ["augment", "--data", str(dataset_csv), "--c", "0.5",
                               "--fixed-radius", "0.1", "--out", str(tmp_path)])
    assert res.exit_code != 0 and "exactly one" in res.output


def test_augment_rerun_identical(dataset_csv, tmp_path):
    args = ["augment", "--data", str(dataset_csv), "--c", "0.5", "--m", "2",
            "--seed", "5", "--out", str(tmp_path), "--name", "augd"]
    run_ok(args)
    first = (tmp_path / "augd" / "data" / "augmented.csv").read_bytes()
    run_ok(args)
    assert (tmp_path / "augd" / "data" / "augmented.csv").read_bytes() == first


# --- train ----------------------------------------------------------------------

@pytest.fixture()
def split_csvs(tmp_path, dataset_csv):
    ds, _ = datagen.load_csv(dataset_csv)
    train, test = datagen.split(ds, datagen.SplitSpec(0.8, seed=2))
    tr, te = tmp_path / "train.csv", tmp_path / "test.csv"
    datagen.save_csv(train, tr)
    datagen.save_csv(test, te)
    return tr, te


def test_train_mlp_writes_three_loss_rows(split_csvs, tmp_path):
    tr, te = split_csvs
    run_ok(["train", "--data", str(tr), "--test", str(te), "--model", "mlp",
            "--epochs", "3", "--out", str(tmp_path), "--name", "t"])
    lines = (tmp_path / "t" / "reports" / "losses.csv").read_text().splitlines()
    assert lines[0] == losses.REPORT_CSV_HEADER
    assert len(lines) == 4
    names = [ln.split(",")[0] for ln in lines[1:]]
    assert names[0] == "binary"
    assert names[1].startswith("robust_fixed_r=")
    assert names[2].startswith("adaptive_testtime")
    assert (tmp_path / "t" / "models" / "model.txt").exists()


def test_train_nn1(split_csvs, tmp_path):
    tr, te = split_csvs
    run_ok(["train", "--data", str(tr), "--test", str(te), "--model", "nn1",
            "--out", str(tmp_path), "--name", "tnn"])
    lines = (tmp_path / "tnn" / "reports" / "losses.csv").read_text().splitlines()
    assert lines[1].split(",")[1] == "0.0"  # separable circles: 1-NN is perfect


def test_train_nn1_single_class_error_surfaces(tmp_path):
    pts = np.random.default_rng(0).random((20, 2))
    ds = LabeledDataset(pts, np.zeros(20, dtype=int))
    tr = tmp_path / "oneclass.csv"
    datagen.save_csv(ds, tr)
    res = runner.invoke(main, ["train", "--data", str(tr), "--test", str(tr),
                               "--model", "nn1", "--out", str(tmp_path)])
    assert res.exit_code != 0
    assert "two classes" in str(res.exception)


def test_zero_epoch_train_equals_untrained_eval(split_csvs, tmp_path):
    tr, te = split_csvs
    run_ok(["train", "--data", str(tr), "--test", str(te), "--model", "mlp",
            "--epochs", "0", "--seed", "4", "--out", str(tmp_path), "--name", "t0"])
    got = (tmp_path / "t0" / "reports" / "losses.csv").read_text().splitlines()[1:]

    train_ds, _ = datagen.load_csv(tr)
    test_ds, _ = datagen.load_csv(te)
    h = mlp.as_classifier(mlp.init(2, seed=4))
    stream = RandomStream(4)
    want = [
        losses.binary_loss(h, test_ds),
        losses.robust_loss_fixed(h, test_ds, 0.1, probes=100, stream=stream.child(0)),
        losses.adaptive_robust_testtime(h, test_ds, ref=train_ds, probes=10,
                                        stream=stream.child(1)),
    ]
    assert [ln.split(",")[1] for ln in got] == [repr(r.value) for r in want]


# --- margin ----------------------------------------------------------------------

def test_margin_command_on_shape(tmp_path):
    run_ok(["margin", "--shape", "circles", "--n", "400", "--probes", "20",
            "--grid", "0.02,0.05,0.3", "--epsilon", "0.05",
            "--out", str(tmp_path), "--name", "m"])
    prof = (tmp_path / "m" / "reports" / "margin.csv").read_text().splitlines()
    assert prof[0] == "r,phi_hat" and len(prof) == 4
    summary = (tmp_path / "m" / "reports" / "margin_summary.txt").read_text()
    assert "r_star=0.05" in summary
    assert "nn_sample_bound=" in summary and "undefined" not in summary


def test_margin_single_radius_grid(tmp_path):
    run_ok(["margin", "--shape", "boxes", "--n", "100", "--probes", "10",
            "--grid", "0.05", "--out", str(tmp_path), "--name", "m1"])
    prof = (tmp_path / "m1" / "reports" / "margin.csv").read_text().splitlines()
    assert len(prof) == 2


def test_margin_epsilon_one_selects_last_radius(tmp_path, dataset_csv):
    run_ok(["margin", "--data", str(dataset_csv), "--n", "200", "--probes", "10",
            "--grid", "0.1,0.2,0.5", "--epsilon", "1.0",
            "--out", str(tmp_path), "--name", "m2"])
    summary = (tmp_path / "m2" / "reports" / "margin_summary.txt").read_text()
    assert "r_star=0.5" in summary


def test_margin_requires_shape_xor_data(tmp_path):
    res = runner.invoke(main, ["margin", "--out", str(tmp_path)])
    assert res.exit_code != 0 and "exactly one" in res.output


# --- scenario ---------------------------------------------------------------------

def test_scenario_two_point_output(tmp_path):
    res = run_ok(["scenario", "two_point", "--gap", "0.5", "--r", "1.0",
                  "--out", str(tmp_path), "--name", "s"])
    assert "best_robust_loss = 0.5" in res.output
    assert "binary_optimal_robust_loss = 1.0" in res.output
    assert "disagreement_mass = 0.5" in res.output
    assert (tmp_path / "s" / "reports" / "scenario_two_point.csv").exists()
    assert (tmp_path / "s" / "reports" / "scenario_two_point.txt").exists()


def test_scenario_four_point_output(tmp_path):
    res = run_ok(["scenario", "four_point", "--out", str(tmp_path), "--name", "s4"])
    assert "threshold_robust_loss_r=0.1 = 0.0" in res.output
    assert "best_robust_loss_r=0.1 = 0.0" in res.output


def test_scenario_two_rectangles_output(tmp_path):
    res = run_ok(["scenario", "two_rectangles", "--epsilon", "0.2", "--mc", "20000",
                  "--out", str(tmp_path), "--name", "sr"])
    value = float([ln for ln in res.output.splitlines()
                   if ln.startswith("disagreement_mass")][0].split("=")[1].split("(")[0])
    assert abs(value - 0.5) < 0.02


def test_scenario_unknown_name_lists_options(tmp_path):
    res = runner.invoke(main, ["scenario", "five_point", "--out", str(tmp_path)])
    assert res.exit_code != 0
    assert "two_point" in res.output and "two_rectangles" in res.output


# --- render -----------------------------------------------------------------------

def test_render_svg_colors(split_csvs, tmp_path):
    tr, te = split_csvs
    run_ok(["train", "--data", str(tr), "--test", str(te), "--model", "mlp",
            "--epochs", "3", "--out", str(tmp_path), "--name", "tr"])
    run_ok(["render", "--model-file", str(tmp_path / "tr" / "models" / "model.txt"),
            "--data", str(tr), "--ambient", "500", "--out", str(tmp_path), "--name", "r"])
    svg = (tmp_path / "r" / "figs" / "regions.svg").read_text()
    colors = {c for c in ("#9467bd", "#d62728", "#1f77b4", "#2ca02c") if c in svg}
    assert len(colors) == 4
    assert svg.startswith("<svg")


def test_render_zero_ambient_points_only_training(split_csvs, tmp_path):
    tr, _ = split_csvs
    run_ok(["render", "--nn1-data", str(tr), "--data", str(tr), "--ambient", "0",
            "--out", str(tmp_path), "--name", "r0"])
    svg = (tmp_path / "r0" / "figs" / "regions.svg").read_text()
    assert 'r="2"' not in svg   # no ambient dots
    assert 'r="3"' in svg       # training dots present


def test_render_rerun_byte_identical(split_csvs, tmp_path):
    tr, _ = split_csvs
    args = ["render", "--nn1-data", str(tr), "--data", str(tr), "--ambient", "100",
            "--seed", "5", "--out", str(tmp_path), "--name", "rb"]
    run_ok(args)
    first = (tmp_path / "rb" / "figs" / "regions.svg").read_bytes()
    run_ok(args)
    assert (tmp_path / "rb" / "figs" / "regions.svg").read_bytes() == first


def test_render_rejects_non_2d():
    ds = LabeledDataset(np.random.default_rng(1).random((10, 3)),
                        np.array([0, 1] * 5))
    with pytest.raises(ValueError, match="2-D"):
        render_regions_svg(NnClassifier(ds), ds, 10, RandomStream(0))


def test_full_pipeline_reports_reproduce(tmp_path):
    def pipeline(root):
        run_ok(["generate", "--shape", "nnn", "--n", "120", "--seed", "2",
                "--out", str(root), "--name", "d"])
        data = root / "d" / "data" / "dataset.csv"
        run_ok(["augment", "--data", str(data), "--c", "0.5", "--m", "2",
                "--seed", "3", "--out", str(root), "--name", "a"])
        aug = root / "a" / "data" / "augmented.csv"
        run_ok(["train", "--data", str(aug), "--test", str(data), "--model", "mlp",
                "--epochs", "3", "--seed", "4", "--out", str(root), "--name", "t"])
        return (root / "t" / "reports" / "losses.csv").read_bytes()

    assert pipeline(tmp_path / "run1") == pipeline(tmp_path / "run2")


# --- sweep -------------------------------------------------------------------------

def test_sweep_table_structure(tmp_path):
    run_ok(["sweep", "--shapes", "circles", "--n", "60", "--m", "2", "--seeds", "1",
            "--epochs", "3", "--fixed-radii", "0.1,0.5", "--probes", "10",
            "--ambient", "50", "--out", str(tmp_path), "--name", "sw"])
    table = (tmp_path / "sw" / "reports" / "sweep_table.csv").read_text().splitlines()
    assert table[0] == ("shape,none_binary,none_adaptive,fixed0.1_binary,fixed0.1_adaptive,"
                        "fixed0.5_binary,fixed0.5_adaptive,adaptive_binary,adaptive_adaptive")
    assert len(table) == 2 and table[1].startswith("circles,")
    cells = (tmp_path / "sw" / "reports" / "sweep_cells.csv").read_text().splitlines()
    assert len(cells) == 1 + 4 * 6  # header + 4 variants x (binary + 4 grid radii + adaptive)
    figs = sorted(p.name for p in (tmp_path / "sw" / "figs").glob("*.svg"))
    assert figs == ["circles_adaptive_s0.svg", "circles_fixed0.1_s0.svg",
                    "circles_fixed0.5_s0.svg", "circles_none_s0.svg"]
