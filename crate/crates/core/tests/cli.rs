use std::path::PathBuf;

use orchard::cli::run;
use orchard::config::Configuration;
use orchard::exact::rat;
use orchard::projective::default_chart;
use orchard::{
    dualize, orchard_partition, orchard_tree, projective_orchard, pseudoline_orientation,
    pseudoline_partition, GeneralizedConfiguration, HomogeneousConfiguration, WiringDiagram,
};
use serde_json::{json, Value};

fn data(name: &str) -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/").to_string() + name
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn orchard(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("orchard").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = orchard(args);
    assert_eq!(code, 0, "{args:?}: {out}{err}");
    serde_json::from_str(&out).unwrap()
}

fn load(name: &str) -> Configuration {
    Configuration::parse(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

#[test]
fn goldens_are_byte_exact() {
    let cases: &[(&[&str], &str)] = &[
        (
            &["partition", "--method", "all_pairs", "line5.txt"],
            "line5_partition.json",
        ),
        (
            &["partition", "--method", "all_pairs", "square.txt"],
            "square_partition.json",
        ),
        (
            &["partition", "--method", "all_pairs", "pentagon.txt"],
            "pentagon_partition.json",
        ),
        (&["partition", "line5.txt"], "line5_anchor.json"),
        (&["partition", "square.txt"], "square_anchor.json"),
        (&["partition", "pentagon.txt"], "pentagon_anchor.json"),
        (&["tree", "line5.txt"], "line5_tree.json"),
        (&["tree", "square.txt"], "square_tree.json"),
        (&["tree", "pentagon.txt"], "pentagon_tree.json"),
        (&["plot", "line5.txt"], "line5_plot.json"),
        (&["plot", "square.txt"], "square.svg"),
        (&["plot", "pentagon.txt"], "pentagon.svg"),
        (
            &["plot", "--pair", "1,3", "--labels", "square.txt"],
            "square_pair.svg",
        ),
        (&["dualize", "square.txt"], "square_dualize.json"),
        (&["dualize", "pentagon.txt"], "pentagon_dualize.json"),
        (
            &["flip", "--flipset", "2,3", "--mover", "3", "line5.txt"],
            "line5_flip.json",
        ),
    ];
    for (args, expected) in cases {
        let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let last = argv.pop().unwrap();
        argv.push(data(&last));
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        let (_, out, _) = orchard(&argv);
        assert_eq!(out, golden(expected), "{expected}");
    }
}

#[test]
fn partition_matches_library() {
    for name in ["line5.txt", "square.txt", "pentagon.txt"] {
        let cfg = load(name);
        for method in ["anchor", "all_pairs"] {
            let v = json_of(&["partition", "--method", method, &data(name)]);
            let lib = orchard_partition(&cfg, method.parse().unwrap()).unwrap();
            assert_eq!(v, serde_json::to_value(&lib).unwrap());
        }
        let v = json_of(&["tree", &data(name)]);
        assert_eq!(
            v,
            serde_json::to_value(orchard_tree(&cfg).unwrap()).unwrap()
        );
    }
}

#[test]
fn family_matches_library() {
    let v = json_of(&["family", &data("circles.txt")]);
    let g = GeneralizedConfiguration::parse(&std::fs::read_to_string(data("circles.txt")).unwrap())
        .unwrap();
    assert_eq!(v["c_generic"], json!(orchard::c_generic(&g)));
    let lib = orchard::c_orchard_partition(&g).unwrap();
    assert_eq!(v["partition"], serde_json::to_value(&lib).unwrap());
}

#[test]
fn projective_and_sphere_match_library() {
    let text = std::fs::read_to_string(data("proj6.txt")).unwrap();
    let h = HomogeneousConfiguration::parse(&text).unwrap();
    let chart = default_chart(&h).unwrap();
    let v = json_of(&["projective", &data("proj6.txt")]);
    assert_eq!(
        v,
        serde_json::to_value(projective_orchard(&h, &chart).unwrap()).unwrap()
    );

    let v = json_of(&["projective", "--chart", "1,1,1", &data("proj6.txt")]);
    let lib = projective_orchard(&h, &orchard::Chart::new(vec![rat(1), rat(1), rat(1)]));
    assert_eq!(v, serde_json::to_value(lib.unwrap()).unwrap());

    let text = std::fs::read_to_string(data("sphere5.txt")).unwrap();
    let h = HomogeneousConfiguration::parse(&text).unwrap();
    let chart = default_chart(&h).unwrap();
    let lib = orchard::spherical_orchard(&h, &chart).unwrap();
    let v = json_of(&["sphere", &data("sphere5.txt")]);
    assert_eq!(v["classA"], json!(lib.class_a));
    assert_eq!(v["classB"], json!(lib.class_b));

    let v = json_of(&["gamma", &data("sphere5.txt")]);
    assert_eq!(v["pass"], json!(true));
}

#[test]
fn wiring_matches_library() {
    let wd6 = WiringDiagram::parse(&std::fs::read_to_string(data("wiring6.txt")).unwrap()).unwrap();
    let v = json_of(&["wiring", &data("wiring6.txt")]);
    assert_eq!(
        v["partition"],
        serde_json::to_value(pseudoline_partition(&wd6).unwrap()).unwrap()
    );

    let wd5 = WiringDiagram::parse(&std::fs::read_to_string(data("wiring5.txt")).unwrap()).unwrap();
    let v = json_of(&["wiring", "--smooth", "respect", &data("wiring5.txt")]);
    let [a, b] = pseudoline_orientation(&wd5).unwrap();
    assert_eq!(v["orientations"], json!([a.forward, b.forward]));
    assert_eq!(v["curves"]["one_sided"].as_u64().unwrap() % 2, 1);

    let square = load("square.txt");
    let v = json_of(&["dualize", &data("square.txt")]);
    let dual = dualize(&square, 0, 1000).unwrap();
    assert_eq!(v["word"], json!(dual.diagram.word()));
    assert_eq!(v["wire_to_point"], json!(dual.wire_to_point));
}

#[test]
fn flip_writes_the_new_configuration() {
    let dir = std::env::temp_dir().join(format!("orchard-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("after.txt");
    let v = json_of(&[
        "--seed",
        "5",
        "flip",
        "--random",
        "--write",
        out.to_str().unwrap(),
        &data("pentagon.txt"),
    ]);
    assert_eq!(v["proposition"]["pass"], json!(true));
    let after = Configuration::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["after"], serde_json::to_value(&after).unwrap());
    let svg = dir.join("p.svg");
    let v = json_of(&["plot", &data("square.txt"), svg.to_str().unwrap()]);
    assert_eq!(v["partition"], json!({"classA": [1, 3], "classB": [2, 4]}));
    assert_eq!(std::fs::read_to_string(&svg).unwrap(), golden("square.svg"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let (code, out, _) = orchard(&["check", &data("collinear.txt")]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["code"], "non_generic");
    assert_eq!(v["error"]["subset"], json!([1, 2, 3]));

    let (code, out, _) = orchard(&["projective", &data("sphere5.txt")]);
    assert_eq!(code, 1, "{out}");

    let (code, out, _) = orchard(&["wiring", "--smooth", "respect", &data("wiring6.txt")]);
    assert_eq!(code, 1);
    assert!(out.contains("unsupported_parity"), "{out}");

    let (code, out, err) = orchard(&["partition", "--method", "nope", &data("square.txt")]);
    assert_eq!((code, out.is_empty()), (2, true));
    assert!(err.contains("nope"));
    assert_eq!(orchard(&["frobnicate"]).0, 2);
    assert_eq!(orchard(&["--help"]).0, 0);

    let (code, out, _) = orchard(&["check", "/nonexistent/points.txt"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"io\""), "{out}");

    let v = json_of(&["check", &data("pentagon.txt")]);
    assert_eq!(v, json!({"generic": true, "d": 2, "n": 5}));
}

#[test]
fn plain_format() {
    let (code, out, _) = orchard(&["--format", "plain", "partition", &data("square.txt")]);
    assert_eq!(code, 0);
    assert_eq!(out, "classA: 1 3\nclassB: 2 4\n");
}

#[test]
fn parity_report() {
    let v = json_of(&[
        "parity", "--n", "6", "--d", "1", "--trials", "2", "--steps", "5",
    ]);
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["law"], json!({"fixed": {"pi": 1}}));
    assert_eq!(v["trials"].as_array().unwrap().len(), 2);
}
