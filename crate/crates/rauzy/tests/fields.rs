use rauzy::verify::{run, Criterion};
use rauzy::{FieldChoice, RunConfig};

#[test]
fn field_independent_checks_over_a_prime_field() {
    let cfg = RunConfig { field: FieldChoice::Prime(101), ..Default::default() };
    for c in [Criterion::AlgebraDims, Criterion::Sequences, Criterion::LoopsHearts, Criterion::Periodicity] {
        let r = run(c, &cfg).unwrap();
        assert!(r.passed, "{r}");
    }
}

#[test]
fn wrong_signs_are_caught() {
    for signs in ["constant", "corrupted-0-0"] {
        let cfg = RunConfig { signs: signs.into(), ..Default::default() };
        let r = run(Criterion::AlgebraDims, &cfg).unwrap();
        assert!(!r.passed, "{signs}: {r}");
    }
}
