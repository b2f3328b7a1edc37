//! Seeded random cell terms for property checks run from the command line.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polygraph_core::cells2::eh_rewrites;
use polygraph_core::{eq_cells, normalize, Cell2Term, Computad2, Path, Result};

pub const MAX_DEPTH: usize = 6;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random well-typed term at `vertex` of an EH computad with
/// [`Cell2Term::depth`] at most `depth`. Leaves are generators on `vertex` or
/// its identity cell.
pub fn random_term(rng: &mut impl Rng, k: &Computad2, vertex: &str, depth: usize) -> Cell2Term {
    let gens: Vec<&String> = k
        .generators()
        .filter(|(_, b)| b.src.source() == vertex)
        .map(|(g, _)| g)
        .collect();
    if depth <= 1 || rng.gen_bool(0.3) {
        if gens.is_empty() || rng.gen_bool(0.2) {
            return Cell2Term::id(Path::identity(vertex));
        }
        return Cell2Term::gen(gens[rng.gen_range(0..gens.len())].clone());
    }
    let a = random_term(rng, k, vertex, depth - 1);
    let b = random_term(rng, k, vertex, depth - 1);
    if rng.gen_bool(0.5) {
        a.v(b)
    } else {
        a.h(b)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub terms: usize,
    pub rewrites_checked: usize,
    pub exchanges_checked: usize,
    pub equality_checks: usize,
    pub failures: Vec<String>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Draws `count` random terms over the vertices of `k` and checks that
/// normal forms are invariant under single rewrites and under swapping
/// composites, and that `eq_cells` agrees with comparing normal forms.
pub fn selftest(k: &Computad2, seed: u64, count: usize) -> Result<SelftestReport> {
    let mut rng = rng_from_seed(seed);
    let vertices = k.skeleton().vertices().to_vec();
    let mut report = SelftestReport {
        seed,
        ..SelftestReport::default()
    };
    let mut previous: Option<Cell2Term> = None;
    for _ in 0..count {
        let vertex = &vertices[rng.gen_range(0..vertices.len())];
        let t = random_term(&mut rng, k, vertex, MAX_DEPTH);
        let u = random_term(&mut rng, k, vertex, MAX_DEPTH);
        report.terms += 1;
        let nt = normalize(&t, k)?;
        for r in eh_rewrites(&t) {
            report.rewrites_checked += 1;
            if normalize(&r, k)? != nt {
                report
                    .failures
                    .push(format!("rewrite changed normal form: {t} ~> {r}"));
            }
        }
        let composites = [
            t.clone().v(u.clone()),
            t.clone().h(u.clone()),
            u.clone().v(t.clone()),
            u.clone().h(t.clone()),
        ];
        let first = normalize(&composites[0], k)?;
        for c in &composites[1..] {
            report.exchanges_checked += 1;
            if normalize(c, k)? != first {
                report
                    .failures
                    .push(format!("composites disagree: {} vs {c}", composites[0]));
            }
        }
        // compare against the previous term too, which may sit at another vertex
        for other in [Some(&u), previous.as_ref()].into_iter().flatten() {
            report.equality_checks += 1;
            let by_nf = normalize(other, k)? == nt;
            if eq_cells(&t, other, k)? != by_nf {
                report
                    .failures
                    .push(format!("eq_cells disagrees on {t} and {other}"));
            }
        }
        previous = Some(t);
    }
    Ok(report)
}
