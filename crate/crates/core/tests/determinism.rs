use mzv_lab::cli::suites::{run_cases, THREADS_ENV};

#[test]
fn reports_do_not_depend_on_worker_count() {
    let suites = [
        ("thm-derivation", Some(7), None),
        ("thm-szdual", Some(7), None),
        ("zhao-duality", Some(4), Some(20)),
        ("characters", Some(4), Some(20)),
        ("infinitesimal", Some(6), None),
    ];
    let run_all = || {
        suites
            .iter()
            .map(|(name, bound, order)| {
                serde_json::to_string(&run_cases(name, *bound, *order).unwrap()).unwrap()
            })
            .collect::<Vec<_>>()
    };
    std::env::set_var(THREADS_ENV, "1");
    let single = run_all();
    std::env::set_var(THREADS_ENV, "3");
    let multi = run_all();
    std::env::remove_var(THREADS_ENV);
    assert_eq!(single, multi);
    assert_eq!(single, run_all());
}
