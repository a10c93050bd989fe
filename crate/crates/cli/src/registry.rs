//! The bundled example registry: one job per worked example, plus three
//! negative controls for the hypothesis screening.

pub struct BundledExample {
    pub name: &'static str,
    pub text: &'static str,
}

pub const EXAMPLES: &[BundledExample] = &[
    BundledExample { name: "kac_palyutkin_A", text: include_str!("../jobs/kac_palyutkin_A.job") },
    BundledExample { name: "kac_palyutkin_B", text: include_str!("../jobs/kac_palyutkin_B.job") },
    BundledExample { name: "dual_D3", text: include_str!("../jobs/dual_D3.job") },
    BundledExample { name: "dual_D4", text: include_str!("../jobs/dual_D4.job") },
    BundledExample { name: "dual_D5", text: include_str!("../jobs/dual_D5.job") },
    BundledExample { name: "dual_D6", text: include_str!("../jobs/dual_D6.job") },
    BundledExample { name: "downup_dualD4", text: include_str!("../jobs/downup_dualD4.job") },
    BundledExample { name: "cyclic_q", text: include_str!("../jobs/cyclic_q.job") },
    BundledExample { name: "L1_case_c", text: include_str!("../jobs/L1_case_c.job") },
    BundledExample { name: "jordan_case_h", text: include_str!("../jobs/jordan_case_h.job") },
    BundledExample { name: "case_d_n4", text: include_str!("../jobs/case_d_n4.job") },
    BundledExample { name: "trivial_polyring", text: include_str!("../jobs/trivial_polyring.job") },
    BundledExample { name: "bad_relations", text: include_str!("../jobs/bad_relations.job") },
    BundledExample { name: "bad_line", text: include_str!("../jobs/bad_line.job") },
    BundledExample { name: "bad_faithful", text: include_str!("../jobs/bad_faithful.job") },
];

/// The standard ξ tables for the Kac–Palyutkin action, usable with
/// `--intertwiners` against kac_palyutkin_A / kac_palyutkin_B.
pub const KP_XI_TABLES: &str = include_str!("../data/kp_xi_tables.toml");

pub fn find(name: &str) -> Option<&'static BundledExample> {
    EXAMPLES.iter().find(|e| e.name == name)
}
