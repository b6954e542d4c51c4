//! Acceptance suite: each test runs one cross-validation criterion at full
//! scale and prints its pass/fail line. The same checks back the CLI's
//! `selftest` subcommand.

use wreathkit_core::selftest::{self, Scale};

macro_rules! criterion {
    ($name:ident, $check:path) => {
        #[test]
        fn $name() {
            let o = $check(Scale::Full);
            println!(
                "{} {} ({} ms) {}",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                o.millis,
                o.detail
            );
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    };
}

criterion!(
    criterion_01_finite_exhaustive_agreement,
    selftest::check_finite_exhaustive
);
criterion!(
    criterion_02_lamplighter_closed_form,
    selftest::check_lamplighter_closed_form
);
criterion!(
    criterion_03_power_soundness_minimality,
    selftest::check_power_soundness
);
criterion!(
    criterion_04_window_product_definitional,
    selftest::check_window_product
);
criterion!(
    criterion_05_membership_gadgets,
    selftest::check_membership_gadgets
);
criterion!(
    criterion_06_orbit_representative_independence,
    selftest::check_representative_independence
);
criterion!(criterion_07_free_solvable_suite, selftest::check_free_solvable);
criterion!(
    criterion_08_torsion_order_smoothness,
    selftest::check_smoothness_propagation
);
criterion!(criterion_09_bs_power_problem, selftest::check_bs_power);
criterion!(
    criterion_10_congruence_solver,
    selftest::check_congruence_solver
);
