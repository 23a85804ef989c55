macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(
    koebe_functionals,
    "koebe_functionals.rs",
    koebe_functionals_runs
);
example!(
    schiffer_factorization,
    "schiffer_factorization.rs",
    schiffer_factorization_runs
);
example!(g_maximum, "g_maximum.rs", g_maximum_runs);
example!(
    trajectories_svg,
    "trajectories_svg.rs",
    trajectories_svg_runs
);
example!(loewner_koebe, "loewner_koebe.rs", loewner_koebe_runs);
example!(extremal_search, "extremal_search.rs", extremal_search_runs);
example!(lambda_sweep, "lambda_sweep.rs", lambda_sweep_runs);
