use girthwords::harness::{parse_csv, run_experiment, to_csv, ExperimentConfig, ExperimentKind};

const CONFIGS: [&str; 5] = [
    "kind = probe_word\nspecs = sym:4, sl:2:3\nwords = x1 x2 x1^-1 x2^-1; x1^3\nsamples = 5000\ntrials = 2\nseed = 1\n",
    "kind = girth_scan\nspecs = sl:3..4:2, sym:6\ntrials = 6\nseed = 2\n",
    "kind = dg_scan\nspecs = sl:2:5\ntrials = 4\nmode = undirected\nseed = 3\n",
    "kind = trajectory_scan\nspecs = sl:8:2, sp:10:2\nwords = x1 x2\ntrials = 300\nseed = 4\n",
    "kind = bounds_table\nspecs = sl:8:2, sp:14:2, sym:12\nlens = 1..3\nseed = 5\n",
];

#[test]
fn every_kind_is_worker_independent_and_round_trips() {
    for text in CONFIGS {
        let mut cfg = ExperimentConfig::parse(text).unwrap();
        cfg.workers = Some(1);
        let one = run_experiment(&cfg).unwrap();
        cfg.workers = Some(4);
        let four = run_experiment(&cfg).unwrap();
        let csv = to_csv(&one).unwrap();
        assert_eq!(csv, to_csv(&four).unwrap(), "{text}");
        assert_eq!(csv, to_csv(&run_experiment(&cfg).unwrap()).unwrap());
        assert_eq!(parse_csv(&csv).unwrap(), one, "{text}");
        assert_eq!(*one.columns.last().unwrap(), "error");
    }
}

#[test]
fn row_counts_follow_the_grid() {
    let counts: Vec<usize> = CONFIGS.iter().map(|t| run_experiment(&ExperimentConfig::parse(t).unwrap()).unwrap().rows.len()).collect();
    // probe: 2 specs x 2 words x 2 trials; trajectory: sl:8:2 gives 4 trajectories, sp:10:2 gives 2
    assert_eq!(counts, [8, 18, 4, 6, 9]);
}

#[test]
fn sorted_by_spec_then_trial() {
    let t = run_experiment(&ExperimentConfig::parse(CONFIGS[1]).unwrap()).unwrap();
    let keys: Vec<(String, String)> = t.rows.iter().map(|r| (r.cells[0].to_string(), r.cells[5].to_string())).collect();
    assert_eq!(keys[0], ("sl:3:2".to_string(), "0".to_string()));
    assert_eq!(keys[6], ("sl:4:2".to_string(), "0".to_string()));
    assert_eq!(keys[17], ("sym:6".to_string(), "5".to_string()));
    assert_eq!(t.columns.len(), girthwords::harness::columns(ExperimentKind::GirthScan).len());
}
