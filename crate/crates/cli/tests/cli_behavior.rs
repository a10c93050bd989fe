//! Front-end behavior: job parsing round-trips, diagnostics, exit codes,
//! and byte-level determinism of the structured output.

use std::process::Command;

use hopfquiver_cli::job::{parse_job, print_job, resolve, JobError};
use hopfquiver_cli::registry;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfquiver"))
}

fn resolve_err(spec: &hopfquiver_cli::job::JobSpec) -> JobError {
    match resolve(spec) {
        Err(e) => e,
        Ok(_) => panic!("expected a resolution error"),
    }
}

#[test]
fn bundled_jobs_parse_and_round_trip() {
    for example in registry::EXAMPLES {
        let spec = parse_job(example.text)
            .unwrap_or_else(|e| panic!("{} does not parse: {e}", example.name));
        let printed = print_job(&spec);
        let reparsed = parse_job(&printed)
            .unwrap_or_else(|e| panic!("{} does not round-trip: {e}", example.name));
        assert_eq!(spec, reparsed, "{}", example.name);
    }
}

#[test]
fn dimension_error_names_the_field() {
    let text = registry::find("kac_palyutkin_A")
        .unwrap()
        .text
        .replace(
            "x = [[\"-1\", \"0\"], [\"0\", \"1\"]]",
            "x = [[\"-1\", \"0\"], [\"0\", \"1\"], [\"0\", \"0\"]]",
        );
    let spec = parse_job(&text).unwrap();
    let err = resolve_err(&spec);
    let msg = err.to_string();
    assert!(msg.contains("action matrix for x"), "{msg}");
    assert!(msg.contains("3x2"), "{msg}");
    assert!(matches!(err, JobError::Input(_)));
}

#[test]
fn indivisible_order_suggests_a_usable_one() {
    // ω = ζ₄ under N = 2 must point at an order divisible by 4
    let text = registry::find("kac_palyutkin_A").unwrap().text.replace("order = 4", "order = 2");
    let spec = parse_job(&text).unwrap();
    let err = resolve_err(&spec).to_string();
    assert!(err.contains("divisible by 4"), "{err}");

    // eigenvalues of an order-4 rotation under N = 2 as well
    let rot = r#"
version = 1
order = 2
ell = 2
m = 2
gkdim = 2

[hopf]
builtin = "group"
group = { kind = "cyclic", n = 4 }

[action]
vars = ["u", "v"]
group_matrices = [[["0", "-1"], ["1", "0"]]]

[superpotential]
w = "u*v + v*u"
"#;
    let spec = parse_job(rot).unwrap();
    let err = resolve_err(&spec).to_string();
    assert!(err.contains("divisible by 4"), "{err}");
}

#[test]
fn unknown_keys_are_rejected() {
    let text = registry::find("dual_D3").unwrap().text.replace("gkdim = 2", "gkdim = 2\nfrobnicate = true");
    let err = parse_job(&text).unwrap_err().to_string();
    assert!(err.contains("frobnicate") || err.contains("unknown field"), "{err}");
}

#[test]
fn undeclared_symbols_are_rejected() {
    // superpotential mentioning an undeclared variable
    let text = registry::find("dual_D3").unwrap().text.replace("u*u - v*v", "u*u - w*w");
    let spec = parse_job(&text).unwrap();
    let err = resolve_err(&spec).to_string();
    assert!(err.contains("neither a variable nor a scalar"), "{err}");
    // degree assignment mentioning an unknown group element
    let text = registry::find("dual_D3").unwrap().text.replace("v = \"r*s\"", "v = \"nope\"");
    let spec = parse_job(&text).unwrap();
    let err = resolve_err(&spec).to_string();
    assert!(err.contains("nope"), "{err}");
}

#[test]
fn binary_stage_outputs_and_exit_codes() {
    let out = bin().args(["example", "dual_D3", "--stage", "auslander"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("isomorphism (certified)"), "{stdout}");

    let out = bin().args(["example", "trivial_polyring", "--stage", "mckay"]).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("1 vertices, 2 arrows"), "{stdout}");

    // hypothesis violations exit with code 2
    let out = bin().args(["example", "bad_line", "--stage", "validate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("[FAIL] hdet_line"), "{stdout}");

    let out = bin().args(["example", "bad_faithful", "--stage", "mckay"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // input errors exit with code 1
    let out = bin().args(["example", "no_such_example"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin().args(["lambda", "/nonexistent/path.job"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn records_output_is_deterministic() {
    let run = || {
        let out = bin()
            .args(["example", "dual_D4", "--stage", "lambda", "--format", "records"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "structured output differs between runs");
    let text = String::from_utf8(first).unwrap();
    assert!(text.contains("\"version\": 1"), "{text}");
    assert!(text.contains("\"stage\": \"lambda\""), "{text}");

    let hil = bin()
        .args(["example", "L1_case_c", "--stage", "hilbert", "--format", "records"])
        .output()
        .unwrap();
    let text = String::from_utf8(hil.stdout).unwrap();
    assert!(text.contains("\"zero_degree\""), "{text}");
}

#[test]
fn dot_output_renders_the_quiver() {
    let out = bin()
        .args(["example", "kac_palyutkin_A", "--stage", "mckay", "--format", "dot"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"), "{dot}");
    assert!(dot.contains("v0 -> v4"), "{dot}");
    assert!(dot.contains("[auto]"), "arrow provenance annotation missing: {dot}");
}

#[test]
fn xi_tables_flow_through_the_binary() {
    let xi_path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/kp_xi_tables.toml");
    let out = bin()
        .args(["example", "kac_palyutkin_A", "--stage", "lambda", "--intertwiners", xi_path])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("Phi = 2aA + 2bB + 2cC + 2dD + Aa + Bb + Cc + Dd"),
        "{stdout}"
    );
}

#[test]
fn explicit_tables_build_a_working_algebra() {
    // 𝕜C₂ written out in full structure-constant form, acting by the swap
    let text = r#"
version = 1
order = 1
ell = 2
m = 2
gkdim = 2

[hopf]
builtin = "tables"

[hopf.tables]
basis = ["1", "g"]
mult = [[["0:1"], ["1:1"]], [["1:1"], ["0:1"]]]
unit = ["1", "0"]
coproduct = [["0,0:1"], ["1,1:1"]]
counit = ["1", "1"]
antipode = [["1", "0"], ["0", "1"]]
generators = ["g"]

[[hopf.tables.irreps]]
dim = 1
trivial = true
matrices = { 1 = [["1"]], g = [["1"]] }

[[hopf.tables.irreps]]
dim = 1
matrices = { 1 = [["1"]], g = [["-1"]] }

[action]
vars = ["u", "v"]
matrices = { 1 = [["1", "0"], ["0", "1"]], g = [["0", "1"], ["1", "0"]] }

[superpotential]
w = "u*v + v*u"
"#;
    let spec = parse_job(text).unwrap();
    let job = resolve(&spec).unwrap();
    assert_eq!(job.hopf.dim(), 2);
    let pres = hopfquiver::potential::SuperpotentialPresentation::new(
        &job.hopf,
        job.v.clone(),
        job.var_names.clone(),
        job.w.clone(),
        None,
        2,
        2,
    )
    .unwrap();
    let chi = hopfquiver::potential::hdet(&pres).unwrap();
    assert_eq!(chi.values, job.hopf.counit());
    // corrupting the antipode is reported by validation
    let bad = text.replace("antipode = [[\"1\", \"0\"], [\"0\", \"1\"]]", "antipode = [[\"1\", \"0\"], [\"1\", \"1\"]]");
    let spec = parse_job(&bad).unwrap();
    let err = resolve_err(&spec).to_string();
    assert!(err.contains("antipode"), "{err}");
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join("hopfquiver_test_out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quiver.dot");
    let out = bin()
        .args([
            "example",
            "dual_D3",
            "--stage",
            "mckay",
            "--format",
            "dot",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.starts_with("digraph"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn explicit_twist_is_conjugated_through_the_base_change() {
    // w = uv + vu has σ = id in the original basis; after the eigenbasis
    // change the conjugated twist must still verify
    let text = registry::find("L1_case_c")
        .unwrap()
        .text
        .replace("w = \"u*v + v*u\"", "w = \"u*v + v*u\"\ntwist = [[\"1\", \"0\"], [\"0\", \"1\"]]");
    let spec = parse_job(&text).unwrap();
    let job = resolve(&spec).unwrap();
    let pres = hopfquiver::potential::SuperpotentialPresentation::new(
        &job.hopf,
        job.v.clone(),
        job.var_names.clone(),
        job.w.clone(),
        job.sigma.clone(),
        job.m,
        job.gkdim,
    );
    assert!(pres.is_ok(), "conjugated twist fails to verify");
}
