//! CLI contract: exit codes, report content and byte-level determinism.

use std::process::{Command, Output};

fn syzkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

const BROKEN_POLYTOPE: &str = r#"{
  "dim": 2,
  "kahler_params": 1,
  "facets": [
    { "normal": [1, 0], "q_exponent": [0] },
    { "normal": [0, 1], "q_exponent": [0] },
    { "normal": [-1, -2], "q_exponent": [1] }
  ],
  "maximal_cones": [[1, 3]]
}"#;

#[test]
fn mirror_cp2_payload() {
    let out = syzkit(&["mirror", "--preset", "CP2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("z1 + z2 + q1*z1^-1*z2^-1"), "{text}");

    let out = syzkit(&["mirror", "--preset", "CP2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["payload"]["superpotential"], "z1 + z2 + q1*z1^-1*z2^-1");
}

#[test]
fn verify_iso_cp2_ok() {
    let out = syzkit(&["verify-iso", "--preset", "CP2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["payload"]["jacobian_dimension"], 3);
}

#[test]
fn exit_code_partition() {
    // 0: success.
    assert_eq!(syzkit(&["validate", "--preset", "CP1"]).status.code(), Some(0));

    // 1: validation failure on well-formed input.
    let dir = std::env::temp_dir().join("syzkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, BROKEN_POLYTOPE).unwrap();
    let out = syzkit(&["validate", "--file", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("|det| = 2"), "{}", stdout(&out));
    assert!(stdout(&out).contains("status: fail"));

    // 2: structural/input errors.
    assert_eq!(syzkit(&["mirror", "--preset", "CP9"]).status.code(), Some(2));
    let malformed = dir.join("malformed.json");
    std::fs::write(&malformed, "{ not json").unwrap();
    assert_eq!(
        syzkit(&["validate", "--file", malformed.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(syzkit(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(syzkit(&["mirror"]).status.code(), Some(2));
    // Dimension mismatch between normals and dim is structural, not a
    // validation verdict.
    let mismatched = dir.join("mismatched.json");
    std::fs::write(
        &mismatched,
        r#"{"dim": 2, "kahler_params": 0, "facets": [{"normal": [1], "q_exponent": []},
            {"normal": [0, 1], "q_exponent": []}], "maximal_cones": []}"#,
    )
    .unwrap();
    assert_eq!(
        syzkit(&["validate", "--file", mismatched.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn golden_text_reports() {
    let out = syzkit(&["qh", "--preset", "CP2"]);
    assert_eq!(
        stdout(&out),
        "command: qh\n\
         status: ok\n\
         input: CP2\n\
         generators: Psi1, Psi2, Psi3\n\
         linear relations:\n\
         \x20 Psi1 - Psi3   ->   z1 - q1*z1^-1*z2^-1\n\
         \x20 Psi2 - Psi3   ->   z2 - q1*z1^-1*z2^-1\n\
         realization dimension: 3\n"
    );

    let out = syzkit(&["jacobian", "--preset", "CP1"]);
    assert_eq!(
        stdout(&out),
        "command: jacobian\n\
         status: ok\n\
         input: CP1\n\
         dimension: 2\n\
         monomial order: grevlex(z1..zn,w)\n\
         groebner basis:\n\
         \x20 z1 - q1*w\n\
         \x20 w^2 - 1/q1\n\
         standard monomials: 1, w\n\
         generator images:\n\
         \x20 Z1 = z1\n\
         \x20 Z2 = q1*z1^-1\n"
    );

    let out = syzkit(&["mirror", "--preset", "CP2"]);
    assert_eq!(
        stdout(&out),
        "command: mirror\n\
         status: ok\n\
         input: CP2\n\
         W = z1 + z2 + q1*z1^-1*z2^-1\n\
         facet terms:\n\
         \x20 1: z1\n\
         \x20 2: z2\n\
         \x20 3: q1*z1^-1*z2^-1\n"
    );
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["mirror", "--preset", "CP1xCP2", "--format", "json"],
        vec!["jacobian", "--preset", "Bl1CP2", "--format", "json"],
        vec!["qh", "--preset", "CP1xCP1", "--format", "text"],
        vec!["critical", "--preset", "CP2", "--q", "1=1/2", "--format", "json"],
        vec!["clifford", "--preset", "CP1", "--format", "text"],
        vec!["semiflat-check", "--dim", "2", "--format", "json"],
    ] {
        let a = syzkit(&args);
        let b = syzkit(&args);
        assert_eq!(stdout(&a), stdout(&b), "non-deterministic: {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn file_inputs_are_normalized_before_mirror_construction() {
    // CP2 with the rays rotated so the q-carrying facet comes first; the
    // CLI brings it back to the standard basis.
    let permuted = r#"{
      "dim": 2,
      "kahler_params": 1,
      "facets": [
        { "normal": [-1, -1], "q_exponent": [1] },
        { "normal": [1, 0], "q_exponent": [0] },
        { "normal": [0, 1], "q_exponent": [0] }
      ],
      "maximal_cones": [[1, 2], [1, 3], [2, 3]]
    }"#;
    let dir = std::env::temp_dir().join("syzkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("permuted.json");
    std::fs::write(&path, permuted).unwrap();
    let out = syzkit(&["mirror", "--file", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["payload"]["superpotential"], "z1 + z2 + q1*z1^-1*z2^-1");

    let out = syzkit(&["verify-iso", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("syzkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mirror.json");
    let out = syzkit(&[
        "mirror",
        "--preset",
        "CP1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["payload"]["superpotential"], "z1 + q1*z1^-1");
}

#[test]
fn phi_dimension_mismatch_is_an_input_error() {
    let dir = std::env::temp_dir().join("syzkit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let phi = dir.join("phi3.json");
    std::fs::write(&phi, r#"[["1","0","0"],["0","1","0"],["0","0","1"]]"#).unwrap();
    let out = syzkit(&["semiflat-check", "--dim", "2", "--phi", phi.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = syzkit(&["semiflat-check", "--dim", "3", "--phi", phi.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("phi user"));
}

#[test]
fn q_value_parsing() {
    let out = syzkit(&["critical", "--preset", "CP1", "--q", "q1=4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["payload"]["q"][0], 4.0);
    // Roots of z^2 = 4 are +-2.
    let points = doc["payload"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);

    assert_eq!(
        syzkit(&["critical", "--preset", "CP1", "--q", "7=1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        syzkit(&["critical", "--preset", "CP1", "--q", "1=abc"]).status.code(),
        Some(2)
    );
}
