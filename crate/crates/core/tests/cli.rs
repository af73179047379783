use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seifert-covers"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cover_prints_the_predicted_symbol() {
    let o = run(&["cover", "{1;(n2,1);}", "--phi", "v1=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{2;(o1,0);}\n");
}

#[test]
fn enumerate_json_lists_every_epimorphism() {
    let o = run(&["enumerate", "{0;(o1,1);}", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 7);
    assert_eq!(v["epimorphisms"].as_array().unwrap().len(), 7);
    assert_eq!(v["epimorphisms"][0]["phi"], "v1=0,v2=0,h=1");
    assert_eq!(v["epimorphisms"][0]["tag"], "FiberCase");
}

#[test]
fn verify_json_mirrors_the_report() {
    let o = run(&["verify", "{1;(n2,1);}", "--phi", "v1=1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["symbol"], "{1;(n2,1);}");
    assert_eq!(r["predicted"], "{2;(o1,0);}");
    assert_eq!(r["tag"], "BaseExotic");
    assert_eq!(r["oracle_h1"]["rank"], 0);
    assert_eq!(r["oracle_h1"]["torsion"][0], "2");
    assert_eq!(r["pass"], true);
}

#[test]
fn pi1_shows_the_presentation() {
    let o = run(&["pi1", "{-1;(o1,0);(2,1),(3,1),(5,1)}"]);
    let text = stdout(&o);
    assert!(text.contains("s1^2 h"), "{text}");
    assert!(text.contains("H1 = 0"), "{text}");
}

#[test]
fn fuzz_json_summary() {
    let o = run(&[
        "fuzz", "--count", "10", "--seed", "3", "--max-g", "1", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cases"], 10);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert!(v["epimorphisms"].as_u64().unwrap() > 0);
}

#[test]
fn errors_go_to_stderr_with_usage_code() {
    let o = run(&["pi1", "{0;(o1,1)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    let o = run(&["verify", "{0;(o1,1);}", "--phi", "h=1", "--all"]);
    assert_eq!(o.status.code(), Some(2));
}
