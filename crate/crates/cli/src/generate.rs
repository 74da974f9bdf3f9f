use faircover::geometry::GeometryKind;
use faircover::verify::{gen_random_cec, gen_random_cvc, gen_random_geometry, GeneratorConfig};

use crate::format::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InstanceKind {
    Cvc,
    Cec,
    CoverPoints,
    HitLines,
}

pub fn generate(kind: InstanceKind, cfg: &GeneratorConfig) -> Instance {
    match kind {
        InstanceKind::Cvc => Instance::Cvc(gen_random_cvc(cfg)),
        InstanceKind::Cec => {
            let (graph, requirements) = gen_random_cec(cfg);
            Instance::Cec {
                graph,
                requirements,
            }
        }
        InstanceKind::CoverPoints => {
            Instance::Geometry(gen_random_geometry(cfg, GeometryKind::CoverPoints))
        }
        InstanceKind::HitLines => {
            Instance::Geometry(gen_random_geometry(cfg, GeometryKind::HitLines))
        }
    }
}
