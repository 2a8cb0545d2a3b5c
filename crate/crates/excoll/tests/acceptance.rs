use excoll::acceptance::{run, Config, NAMES};

#[test]
fn acceptance() {
    let cfg = Config::default();
    let mut failed = Vec::new();
    for n in 1..=NAMES.len() as u32 {
        let o = run(n, &cfg).expect("criterion runs");
        println!("{}", o.line());
        for d in &o.details {
            println!("    {d}");
        }
        for i in &o.info {
            println!("    info: {i}");
        }
        if !o.passed {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
