use hmmdiv::fredholm::GridSpec;
use hmmdiv::model::{Model, ModelAParams, ModelBParams};
use hmmdiv::montecarlo::McConfig;
use hmmdiv::Order;
use hmmdiv_cli::config::default_alphas;
use hmmdiv_cli::{CaseSpec, Config, Family};
use proptest::prelude::*;

const BUNDLED: &str = include_str!("../configs/reference_cases.json");

fn err_text(json: &str) -> String {
    format!("{:#}", Config::from_json(json).unwrap_err())
}

const B_THETA: &str =
    r#"{ "p01": 0.4, "p10": 0.59, "mu": [1.0, 0.0], "phi": 0.0, "psi1": 1.0, "psi2": 0.0, "sigma": 1.0 }"#;

#[test]
fn bundled_config_parses() {
    let cfg = Config::from_json(BUNDLED).unwrap();
    assert_eq!(cfg.cases.len(), 8);
    let names: Vec<&str> = cfg.cases.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["case1", "case2", "case3", "case4", "case5", "case6", "case7", "case8"]);
    for c in &cfg.cases {
        assert_eq!(c.family(), Family::B);
        assert_eq!(c.alphas, default_alphas());
        assert_eq!(c.mc, McConfig::default());
        assert_eq!(c.grid, GridSpec::default());
    }
    let Model::B(t1) = cfg.cases[6].theta1 else { panic!("family B expected") };
    assert_eq!((t1.phi, t1.psi2), (0.1, 0.1));
}

#[test]
fn omitted_settings_take_defaults() {
    let json = format!(r#"{{ "cases": [{{ "name": "x", "family": "B", "theta1": {B_THETA}, "theta": {B_THETA} }}] }}"#);
    let cfg = Config::from_json(&json).unwrap();
    assert_eq!(cfg.cases[0].alphas, default_alphas());
    assert_eq!(cfg.cases[0].grid.n, 16);
    assert_eq!(cfg.cases[0].mc.n, 2000);
}

#[test]
fn missing_parameter_names_the_key() {
    let json = r#"{ "cases": [{ "name": "x", "family": "B",
        "theta1": { "p01": 0.4, "p10": 0.59, "mu": [1.0, 0.0], "phi": 0.0, "psi1": 1.0, "psi2": 0.0 },
        "theta": { "p01": 0.4, "p10": 0.59, "mu": [1.0, 0.0], "phi": 0.0, "psi1": 1.0, "psi2": 0.0, "sigma": 1.0 } }] }"#;
    let e = err_text(json);
    assert!(e.contains("cases[0].theta1") && e.contains("sigma"), "{e}");
}

#[test]
fn unknown_keys_are_rejected() {
    let top = format!(
        r#"{{ "cases": [{{ "name": "x", "family": "B", "theta1": {B_THETA}, "theta": {B_THETA} }}], "alpha": [2] }}"#
    );
    assert!(err_text(&top).contains("alpha"));
    let grid = format!(
        r#"{{ "cases": [{{ "name": "x", "family": "B", "theta1": {B_THETA}, "theta": {B_THETA} }}], "grid": {{ "n": 8 }} }}"#
    );
    assert!(err_text(&grid).contains("`n`"), "{}", err_text(&grid));
}

#[test]
fn family_mismatch_is_reported() {
    // family A keys under a family B case
    let a = r#"{ "p00": 0.6, "p11": 0.7, "mu": [1.0, 0.0], "psi": [0.1, 0.2], "sigma": [1.0, 1.0] }"#;
    let json = format!(r#"{{ "cases": [{{ "name": "x", "family": "B", "theta1": {B_THETA}, "theta": {a} }}] }}"#);
    assert!(err_text(&json).contains("cases[0].theta"));
}

#[test]
fn bad_orders_are_rejected() {
    for alphas in ["[]", "[0.5, -1.0]", "[0.0]", r#"["kl", "half"]"#] {
        let json = format!(
            r#"{{ "cases": [{{ "name": "x", "family": "B", "theta1": {B_THETA}, "theta": {B_THETA} }}], "alphas": {alphas} }}"#
        );
        assert!(Config::from_json(&json).is_err(), "{alphas} accepted");
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    let bad = B_THETA.replace("\"p01\": 0.4", "\"p01\": 1.4");
    let json = format!(r#"{{ "cases": [{{ "name": "x", "family": "B", "theta1": {bad}, "theta": {B_THETA} }}] }}"#);
    let e = err_text(&json);
    assert!(e.contains("theta1") && e.contains("p01"), "{e}");
}

#[test]
fn malformed_and_missing_inputs() {
    assert!(err_text("{ \"cases\": [").contains("malformed"));
    assert!(err_text(r#"{ "cases": [] }"#).contains("cases"));
    let e = Config::load(std::path::Path::new("/nonexistent/hmmdiv.json")).unwrap_err();
    assert!(format!("{e:#}").contains("cannot read config"));
}

fn model_a() -> impl Strategy<Value = Model> {
    (0.01f64..0.99, 0.01f64..0.99, -5.0f64..5.0, -5.0f64..5.0, -0.99f64..0.99, -0.99f64..0.99, 0.1f64..5.0, 0.1f64..5.0)
        .prop_map(|(p00, p11, m0, m1, a0, a1, s0, s1)| {
            Model::A(ModelAParams { p00, p11, mu: [m0, m1], psi: [a0, a1], sigma: [s0, s1] })
        })
}

fn model_b() -> impl Strategy<Value = Model> {
    (0.01f64..0.99, 0.01f64..0.99, -5.0f64..5.0, -5.0f64..5.0, -0.99f64..0.99, -3.0f64..3.0, -3.0f64..3.0, 0.1f64..5.0)
        .prop_map(|(p01, p10, m0, m1, phi, s1, s2, sigma)| {
            Model::B(ModelBParams::new(p01, p10, [m0, m1], phi, s1, s2, sigma))
        })
}

fn order() -> impl Strategy<Value = Order> {
    prop_oneof![Just(Order::Kl), (0.01f64..10.0).prop_map(Order::Renyi)]
}

fn config() -> impl Strategy<Value = Config> {
    let pair = prop_oneof![(model_a(), model_a()), (model_b(), model_b())];
    (
        prop::collection::vec(("[a-z][a-z0-9_]{0,8}", pair), 1..4),
        prop::collection::vec(order(), 1..10),
        (1usize..5000, 1usize..300, 0usize..500, any::<u64>()),
        (4usize..64, 0.5f64..30.0, (25usize..200).prop_map(|k| 2 * k + 1)),
    )
        .prop_map(|(cases, alphas, (n, reps, burn_in, seed), (gn, a, q))| Config {
            cases: cases
                .into_iter()
                .map(|(name, (theta1, theta))| CaseSpec {
                    name,
                    theta1,
                    theta,
                    alphas: alphas.clone(),
                    mc: McConfig { n, reps, burn_in, seed },
                    grid: GridSpec { n: gn, a, quad_points: q },
                })
                .collect(),
        })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(cfg in config()) {
        let text = cfg.to_json().unwrap();
        let back = Config::from_json(&text).unwrap();
        prop_assert_eq!(back, cfg);
    }
}

#[test]
fn bundled_config_round_trips() {
    let cfg = Config::from_json(BUNDLED).unwrap();
    assert_eq!(Config::from_json(&cfg.to_json().unwrap()).unwrap(), cfg);
}
