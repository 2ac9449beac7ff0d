use std::process::Command;

use weightsys_cli::commands::GOLDEN_TABLES;
use weightsys_cli::tables::{computed_sections, reference_sections, render, REFERENCE_JSON};

#[test]
fn golden_is_the_rendered_reference() {
    let reference = render(&reference_sections(REFERENCE_JSON).unwrap());
    assert_eq!(reference, GOLDEN_TABLES);
}

#[test]
fn computed_tables_match_the_golden() {
    assert_eq!(render(&computed_sections().unwrap()), GOLDEN_TABLES);
}

#[test]
fn golden_covers_every_table() {
    for title in ["# w_sl2(K_n)", "# w_gl(K_n)", "# w_sl(K_n)", "# G_m", "# w_sl2(pi(K_n))"] {
        assert!(GOLDEN_TABLES.contains(title), "{title}");
    }
    let rows = |title: &str| {
        GOLDEN_TABLES
            .split("\n\n")
            .find(|s| s.starts_with(title))
            .unwrap()
            .lines()
            .count()
            - 1
    };
    assert_eq!(rows("# w_sl2(K_n)"), 7);
    assert_eq!(rows("# w_gl(K_n)"), 4);
    assert_eq!(rows("# w_sl(K_n)"), 6);
    assert_eq!(rows("# G_m"), 4);
    assert_eq!(rows("# w_sl2(pi(K_n))"), 6);
}

#[test]
fn tables_command_prints_the_golden() {
    let o = Command::new(env!("CARGO_BIN_EXE_weightsys")).arg("tables").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), GOLDEN_TABLES);
}

#[test]
fn a_changed_reference_no_longer_matches() {
    let tampered = REFERENCE_JSON.replacen("c^4-6c^3+13c^2-7c", "c^4-6c^3+13c^2-8c", 1);
    assert_ne!(render(&reference_sections(&tampered).unwrap()), GOLDEN_TABLES);
}
