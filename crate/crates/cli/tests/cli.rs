use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn gbs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbs"))
        .args(args)
        .env_remove("GBS_SEED")
        .output()
        .expect("run gbs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gbs-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn ranks_of_small_graphs() {
    for (file, line) in [
        ("path_odd.graph", "rank=2 betti=0 mu=2"),
        ("path_even.graph", "rank=3 betti=0 mu=3"),
        ("path4.graph", "rank=3 betti=0 mu=3"),
        ("triangle.graph", "rank=3 betti=1 mu=2"),
        ("bs23.graph", "rank=2 betti=1 mu=1"),
    ] {
        let o = gbs(&["rank", &data(file)]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), line, "{file}");
    }
}

#[test]
fn plateau_listing() {
    let o = gbs(&["plateaux", &data("triangle.graph")]);
    assert_eq!(
        stdout(&o),
        "p=2 vertices=v_a,v_b edges=e_1\n\
         p=3 vertices=v_a,v_c edges=e_3\n\
         p=5 vertices=v_b,v_c edges=e_2\n\
         count=3\n"
    );
    let o = gbs(&["plateaux", &data("path4.graph"), "--prime", "5"]);
    assert!(stdout(&o).ends_with("count=2\n"));
    let o = gbs(&["plateaux", &data("path4.graph"), "--prime", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generating_sets_and_exit_codes() {
    let o = gbs(&["generates", &data("path_odd.graph"), "--keep", "v_a,v_c"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "generates=true"));
    let o = gbs(&["generates", &data("path_odd.graph"), "--keep", "v_a"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "generates=false"));
    let o = gbs(&["generates", &data("path_odd.graph"), "--keep", "nowhere"]);
    assert_eq!(o.status.code(), Some(2));
    let o = gbs(&["mu", &data("path4.graph")]);
    assert_eq!(stdout(&o).trim(), "mu=3 vertices=v_a,v_b,v_d");
}

#[test]
fn parse_errors_exit_two() {
    let o = gbs(&["rank", &data("zero.graph")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero label, line 3"));
    assert_eq!(gbs(&["rank", &data("missing.graph")]).status.code(), Some(2));
    assert_eq!(gbs(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn graph_transformations() {
    let o = gbs(&["normalize", &data("bs2m3.graph")]);
    assert_eq!(stdout(&o), "vertex v\nedge t v v 2 -3\n");
    let o = gbs(&["reduce", &data("triangle.graph")]);
    assert_eq!(stdout(&o), std::fs::read_to_string(data("triangle.graph")).unwrap());
    let o = gbs(&["modulus", &data("bs23.graph")]);
    assert_eq!(stdout(&o), "cycle=t value=2/3\nunimodular=false nontrivial_center=false\n");
    assert_eq!(gbs(&["large", &data("bs23.graph")]).status.code(), Some(1));
    assert_eq!(gbs(&["large", &data("bs24.graph")]).status.code(), Some(0));
}

#[test]
fn lollipop_map() {
    let o = gbs(&["cover", "verify", &data("lollipop.map")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("admissible=true total_multiplicity=2\n"));
    let o = gbs(&["cover", "verify", &data("broken.map")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("lift l has multiplicity 1, expected 2"));
    let o = gbs(&["cover", "extract-plateau", &data("lollipop.map")]);
    assert_eq!(stdout(&o).trim(), "p=2 vertices=u edges=");
    let o = gbs(&["cover", "audit", &data("lollipop.map")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("check=keyg status=pass detail=rank_bar=3 rank=3"));
    assert!(!out.contains("status=fail"));
}

#[test]
fn written_maps_verify() {
    let dir = scratch("branch");
    let prefix = dir.join("cover");
    let o = gbs(&[
        "cover",
        "branch",
        &data("path_odd.graph"),
        "--prime",
        "3",
        "--plateau-vertex",
        "v_a",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let map = dir.join("cover.map");
    let v = gbs(&["cover", "verify", map.to_str().unwrap()]);
    assert!(v.status.success());
    let o = gbs(&["rank", dir.join("cover.graph").to_str().unwrap()]);
    assert!(o.status.success());

    // compose a voltage cover of the source with the branched cover, in either order
    let second = dir.join("second");
    let o = gbs(&[
        "cover",
        "voltage",
        dir.join("cover.graph").to_str().unwrap(),
        "--degree",
        "1",
        "--out",
        second.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let both = dir.join("both");
    for (a, b) in [("cover.map", "second.map"), ("second.map", "cover.map")] {
        let o = gbs(&[
            "cover",
            "compose",
            dir.join(a).to_str().unwrap(),
            dir.join(b).to_str().unwrap(),
            "--out",
            both.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(gbs(&["cover", "verify", dir.join("both.map").to_str().unwrap()]).status.success());
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn voltage_seed_from_environment() {
    let run = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_gbs"));
        c.args(["cover", "voltage", &data("triangle.graph"), "--degree", "3", "--seed", "5"]);
        match seed {
            Some(s) => c.env("GBS_SEED", s),
            None => c.env_remove("GBS_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(None), run(Some("5")));
    assert_eq!(run(Some("9")), run(Some("9")));
    assert_ne!(run(Some("9")), run(Some("5")));
}

#[test]
fn plateau_free_bs24() {
    let o = gbs(&["cover", "plateau-free", &data("bs24.graph")]);
    let out = stdout(&o);
    assert!(out.contains("edge t.1 v v 1 2\nedge t.2 v v 1 2\n"));
}

#[test]
fn commensurability_verdicts() {
    let o = gbs(&["commensurable", &data("bs23.graph"), &data("circle2323.graph"), "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("answer=commensurable"));
    assert!(out.contains("witness=found degrees=2,1"));
    let o = gbs(&["commensurable", &data("bs23.graph"), &data("bs49.graph")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("answer=not-commensurable"));
    let o = gbs(&["commensurable", &data("bs24.graph"), &data("bs23.graph")]);
    assert!(stdout(&o).starts_with("answer=out-of-scope"));
}

#[test]
fn witness_maps_are_written() {
    let dir = scratch("witness");
    let prefix = dir.join("w");
    let o = gbs(&[
        "commensurable",
        &data("bs23.graph"),
        &data("circle2323.graph"),
        "--witness",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    for tag in ["w.1.map", "w.2.map"] {
        let v = gbs(&["cover", "verify", dir.join(tag).to_str().unwrap()]);
        assert!(stdout(&v).contains("topological_covering=true"), "{tag}");
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn mapping_torus_of_theta() {
    let o = gbs(&["mapping-torus", &data("theta.aut")]);
    assert_eq!(
        stdout(&o),
        "order=6 inverted_edges=3 rank=2\nvertex P\nvertex a.mid\nedge a.0 P a.mid 3 2\n"
    );
    let o = gbs(&["mapping-torus", &data("theta.aut"), "--graph-only"]);
    assert!(stdout(&o).starts_with("vertex P\n"));
}

#[test]
fn suites() {
    let o = gbs(&["suite", "all", "--count", "10", "--quiet"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("summary suite=all instances=10 "));
    let o = gbs(&["suite", "cove", "--count", "2"]);
    let out = stdout(&o);
    assert!(out.starts_with("suite=cove instance=0 seed=1 property=admissible status=pass"));
    let shifted = Command::new(env!("CARGO_BIN_EXE_gbs"))
        .args(["suite", "cove", "--count", "1"])
        .env("GBS_SEED", "2")
        .output()
        .unwrap();
    assert!(stdout(&shifted).starts_with("suite=cove instance=0 seed=2 "));
    assert_eq!(gbs(&["suite", "nope"]).status.code(), Some(2));
}

#[test]
fn generated_maps_round_trip() {
    let dir = scratch("generate");
    let prefix = dir.join("g");
    let o = gbs(&[
        "generate",
        "--seed",
        "3",
        "--recipe",
        "branched,compose,voltage(2)",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = gbs(&["cover", "audit", dir.join("g.map").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    std::fs::remove_dir_all(dir).ok();
}
