//! Acceptance gate: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use adlv::suites::{run_suites, SuiteConfig, SuiteReport};

struct Line {
    id: u32,
    ok: bool,
    detail: String,
}

fn suite(id: u32, limit: Option<Duration>) -> (SuiteReport, Line) {
    let cfg = SuiteConfig::default();
    let t = Instant::now();
    let r = run_suites(&cfg, &[id]).pop().expect("one report");
    let dt = t.elapsed();
    let fast = limit.is_none_or(|l| dt < l);
    let mut detail = format!("{} {:?} in {:.2?}", r.name, r.counts, dt);
    if let Some(l) = limit {
        detail.push_str(&format!(" (limit {l:?})"));
    }
    for v in r.violations.iter().chain(&r.errors).take(5) {
        detail.push_str(&format!("\n    {v}"));
    }
    let line = Line {
        id,
        ok: r.passed && fast,
        detail,
    };
    (r, line)
}

fn count(r: &SuiteReport, key: &str) -> u64 {
    r.counts.get(key).copied().unwrap_or(0)
}

fn verify_bytes() -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_adlv"))
        .arg("verify")
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn main() {
    let mut lines = Vec::new();

    lines.push(suite(1, Some(Duration::from_secs(1))).1);
    lines.push(suite(2, Some(Duration::from_secs(60))).1);
    let (r3, mut l3) = suite(3, None);
    l3.ok &= count(&r3, "reflections") > 0;
    lines.push(l3);
    let (r4, mut l4) = suite(4, Some(Duration::from_secs(300)));
    l4.ok &= count(&r4, "checked") > 0;
    lines.push(l4);

    let (r5, mut l5) = suite(5, None);
    let out = Command::new(env!("CARGO_BIN_EXE_adlv"))
        .args(["verify", "--suites", "5"])
        .output()
        .expect("binary runs");
    let code = out.status.code();
    l5.ok &= count(&r5, "classes") > 0 && code == Some(0);
    l5.detail
        .push_str(&format!("; verify --suites 5 exit {code:?}"));
    lines.push(l5);

    let (r6, mut l6) = suite(6, None);
    l6.ok &= count(&r6, "straight") > 0;
    lines.push(l6);
    let (r7, mut l7) = suite(7, None);
    l7.ok &= count(&r7, "fixed") > 0;
    lines.push(l7);
    let (r8, mut l8) = suite(8, None);
    l8.ok &= count(&r8, "certificates") > 0 && count(&r8, "ample-samples") == 1000;
    lines.push(l8);
    let (r9, mut l9) = suite(9, None);
    l9.ok &= count(&r9, "bruhat-pairs") > 0;
    lines.push(l9);

    let t = Instant::now();
    let (c1, a) = verify_bytes();
    let (c2, b) = verify_bytes();
    lines.push(Line {
        id: 10,
        ok: c1 == Some(0) && c2 == Some(0) && !a.is_empty() && a == b,
        detail: format!(
            "verify twice: exit {c1:?}/{c2:?}, {} bytes, identical = {} in {:.2?}",
            a.len(),
            a == b,
            t.elapsed()
        ),
    });

    let mut failed = 0;
    for l in &lines {
        println!(
            "criterion {:>2}: {} {}",
            l.id,
            if l.ok { "PASS" } else { "FAIL" },
            l.detail
        );
        failed += usize::from(!l.ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
