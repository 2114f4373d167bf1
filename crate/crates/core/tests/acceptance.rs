use friable::suite::{run_all, CRITERIA};

#[test]
fn acceptance() {
    let outcomes = run_all();
    assert_eq!(outcomes.len(), CRITERIA.len());
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
