use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lcmlab::catalog::bundled_catalog_dir;
use lcmlab::report::AnalysisReport;
use lcmlab::scan::PairFinding;

fn lcmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcmlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_round_trip_as_json() {
    let out = lcmlab(&["analyze", "S:3", "--json", "--sections"]);
    assert!(out.status.success());
    let r: AnalysisReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r.psi, 13);
    assert_eq!(r.lcm_ratio, "1/2");
    assert_eq!(r.lcm_star.as_deref(), Some("1/2"));
    assert!(!r.nilpotent);
    assert_eq!(lcmlab::report::to_json(&r) + "\n", stdout(&out));

    let out = lcmlab(&["analyze", "C:6", "--json"]);
    let r: AnalysisReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((r.psi, r.lcm_ratio.as_str()), (21, "1/1"));
    assert!(r.lcm_star.is_none());
}

#[test]
fn analyze_pc_file() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/g81.pc");
    let spec = format!("pc:{}", path.display());
    let out = lcmlab(&["analyze", &spec, "--json"]);
    let r: AnalysisReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((r.order, r.exponent), (81, 9));
}

#[test]
fn exit_codes() {
    assert_eq!(lcmlab(&["analyze", "C:3 y C:2"]).status.code(), Some(2));
    assert_eq!(lcmlab(&["analyze", "Q:12"]).status.code(), Some(2));
    assert_eq!(lcmlab(&["analyze", "pc:/no/such/file.pc"]).status.code(), Some(3));
    assert_eq!(lcmlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        lcmlab(&["scan", "minimal-non-lcm", "--order", "64"]).status.code(),
        Some(3)
    );
    assert_eq!(lcmlab(&["search", "q53", "--max-order", "40"]).status.code(), Some(3));
    assert_eq!(
        lcmlab(&["--max-table-order", "100", "analyze", "S:5"]).status.code(),
        Some(3)
    );
}

#[test]
fn scan_minimal_rows() {
    let out = lcmlab(&["scan", "minimal-non-lcm", "--order", "16", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,index,name,orderSequence,lcmRatio");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].contains("Q16"));
    let out = lcmlab(&["scan", "minimal-non-lcm", "--order", "27"]);
    assert_eq!(stdout(&out).trim(), "count 0");
}

#[test]
fn cover_reports_quaternion_and_quasidihedral() {
    let out = lcmlab(&["cover", "-f", "Q:8", "-f", "C:8", "--max-order", "16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("minimum order: 16"));
    assert!(text.contains("Q16\tnon-LCM"));
    assert!(text.contains("QD16\tnon-LCM"));
    assert!(text.contains("completeness: exhaustive"));
    let text = stdout(&lcmlab(&["cover", "-f", "C:2"]));
    assert!(text.contains("cover 2:1\tC2\tLCM"));
}

#[test]
fn search_outputs_are_deterministic() {
    let a = lcmlab(&["search", "q54", "--max-order", "16", "--json"]);
    let b = lcmlab(&["--jobs", "1", "search", "q54", "--max-order", "16", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let pairs: Vec<PairFinding> = serde_json::from_slice(&a.stdout).unwrap();
    assert!(pairs.iter().any(|p| p.order == 16 && p.psi_g == 47 && p.psi_h == 47));
    assert!(String::from_utf8_lossy(&a.stderr).contains("exponent 4, psi 47"));

    let out = lcmlab(&["search", "q53", "--max-order", "32", "--csv"]);
    assert_eq!(
        stdout(&out),
        "gId,hId,order,psiG,psiH,expG,expH,osEqual,kind\n"
    );
}

#[test]
fn verify_suites() {
    let out = lcmlab(&["verify", "--suite", "lemma35", "--case", "i", "--k", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS |LCM(D8 x C8)|: 56"));
    let out = lcmlab(&["verify", "--suite", "lemma35", "--case", "ii", "--k", "1"]);
    assert!(stdout(&out).contains("PASS |LCM(G81 x C3)|: 135"));
    assert!(lcmlab(&["verify", "--suite", "thm44", "--k", "4"]).status.success());
}

#[test]
fn verify_failure_exits_one() {
    // A catalog where the dihedral group of order 8 is missing but the
    // manifest still claims completeness.
    let dir = tempfile::tempdir().unwrap();
    for order in (1..=16).chain([27, 81]) {
        let to = dir.path().join(order.to_string());
        fs::create_dir_all(&to).unwrap();
        for e in fs::read_dir(bundled_catalog_dir().join(order.to_string())).unwrap() {
            let e = e.unwrap();
            fs::copy(e.path(), to.join(e.file_name())).unwrap();
        }
    }
    let eight = dir.path().join("8");
    let dihedral = fs::read_dir(&eight)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| fs::read_to_string(p).unwrap().contains("meta name D8"))
        .unwrap();
    fs::rename(&dihedral, dir.path().join("d8.txt")).unwrap();
    // Renumber so the directory stays dense.
    let mut files: Vec<_> = fs::read_dir(&eight)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "pc"))
        .collect();
    files.sort();
    for (i, f) in files.iter().enumerate() {
        fs::rename(f, eight.join(format!("tmp{i}"))).unwrap();
    }
    for i in 0..files.len() {
        fs::rename(eight.join(format!("tmp{i}")), eight.join(format!("{}.pc", i + 1))).unwrap();
    }
    fs::write(eight.join("manifest"), "count 4\ncomplete yes\n").unwrap();

    let cat = dir.path().to_str().unwrap();
    let out = lcmlab(&["verify", "--suite", "tables", "--catalog", cat]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL minimal non-LCM groups of order 8"));
}
