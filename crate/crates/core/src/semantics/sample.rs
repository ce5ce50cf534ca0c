use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::closure::closure_naive;
use super::kripke::{KripkeFrame, KripkeModel};
use crate::logic::Logic;

/// Frame on `worlds` worlds where each forward edge is present with
/// probability `density`.
pub fn random_frame(rng: &mut impl Rng, worlds: usize, pairs: usize, density: f64) -> KripkeFrame {
    let mut f = KripkeFrame::new(worlds, pairs);
    for pair in 0..pairs {
        for x in 0..worlds {
            for y in 0..worlds {
                if rng.gen_bool(density) {
                    f.add_edge(crate::syntax::Letter::forward(pair), x, y);
                }
            }
        }
    }
    f
}

/// Endless, seed-determined stream of models of a logic: a random frame,
/// closed under the logic's rules, with a random valuation of `props`.
pub struct ModelSampler<'a> {
    logic: &'a Logic,
    worlds: usize,
    props: Vec<String>,
    density: f64,
    rng: ChaCha8Rng,
}

impl Iterator for ModelSampler<'_> {
    type Item = KripkeModel;

    fn next(&mut self) -> Option<KripkeModel> {
        let pairs = self.logic.alphabet.forward_len();
        let frame = random_frame(&mut self.rng, self.worlds, pairs, self.density);
        let mut model = KripkeModel::new(closure_naive(&frame, &self.logic.system));
        for p in &self.props {
            let ext: Vec<usize> = (0..self.worlds).filter(|_| self.rng.gen_bool(0.5)).collect();
            model.set_prop(p, ext);
        }
        Some(model)
    }
}

pub fn sample_kripke_models<'a>(logic: &'a Logic, worlds: usize, props: &[&str], seed: u64) -> ModelSampler<'a> {
    ModelSampler {
        logic,
        worlds,
        props: props.iter().map(|p| p.to_string()).collect(),
        density: 0.3,
        rng: ChaCha8Rng::seed_from_u64(seed),
    }
}
