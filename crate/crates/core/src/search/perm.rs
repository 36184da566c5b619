use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Method, ProblemInstance, SearchError, Witness};
use crate::exec::Exec;
use crate::fields::{make_field, ExtElement, FieldConfig};

/// Image size of f_b over the whole field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationCheck {
    pub field_size: u64,
    pub image_size: u64,
}

impl PermutationCheck {
    pub fn is_permutation(&self) -> bool {
        self.image_size == self.field_size
    }
}

/// Index of f_b(x) for every x, in enumeration order.
fn image_table(inst: &ProblemInstance, budget: u64, exec: &Exec) -> Result<Vec<u64>, SearchError> {
    inst.check_budget(inst.field_size(), budget)?;
    let q = inst.field_size() as u64;
    let cfg = &inst.cfg;
    Ok(exec.map(0..q, |i| cfg.index(&inst.f_b(&cfg.element_at(i)))))
}

pub fn is_permutation(inst: &ProblemInstance, budget: u64, exec: &Exec) -> Result<PermutationCheck, SearchError> {
    let mut image = image_table(inst, budget, exec)?;
    let field_size = image.len() as u64;
    image.sort_unstable();
    image.dedup();
    Ok(PermutationCheck {
        field_size,
        image_size: image.len() as u64,
    })
}

/// Groups of x-indices sharing an image, for images hit more than once.
fn collision_groups(image: &[u64]) -> Vec<Vec<u64>> {
    let mut by_value: HashMap<u64, Vec<u64>> = HashMap::new();
    for (i, &v) in image.iter().enumerate() {
        by_value.entry(v).or_default().push(i as u64);
    }
    let mut groups: Vec<Vec<u64>> = by_value.into_values().filter(|g| g.len() > 1).collect();
    groups.sort_unstable();
    groups
}

/// The first collision (x, y) in enumeration order: least x, then least y.
pub fn find_collision_brute(inst: &ProblemInstance, budget: u64, exec: &Exec) -> Result<Witness, SearchError> {
    let image = image_table(inst, budget, exec)?;
    let groups = collision_groups(&image);
    // Groups are sorted by their least member, so the first holds the least x.
    let group = groups.first().ok_or(SearchError::NotFound)?;
    let cfg = &inst.cfg;
    let x = cfg.element_at(group[0]);
    let y = group[1..]
        .iter()
        .map(|&j| cfg.sub(&cfg.element_at(j), &x))
        .min_by_key(|y| cfg.index(y))
        .expect("group has a second member");
    Ok(complete(inst, x, y, Method::Brute))
}

/// Fills z and Δ for a collision (x, y).
pub(crate) fn complete(inst: &ProblemInstance, x: ExtElement, y: ExtElement, method: Method) -> Witness {
    let cfg = &inst.cfg;
    let z = inst.z_of(&x);
    let delta = cfg.add(&cfg.scale(&z, 2), &cfg.sub(&cfg.frobenius(&y), &y));
    Witness { x, y, delta, z, method }
}

/// All collisions as (index of x, index of y) pairs.
pub fn brute_collision_set(
    inst: &ProblemInstance,
    budget: u64,
    exec: &Exec,
) -> Result<BTreeSet<(u64, u64)>, SearchError> {
    let image = image_table(inst, budget, exec)?;
    let cfg = &inst.cfg;
    let mut out = BTreeSet::new();
    for g in collision_groups(&image) {
        for &i in &g {
            let x = cfg.element_at(i);
            for &j in &g {
                if i != j {
                    out.insert((i, cfg.index(&cfg.sub(&cfg.element_at(j), &x))));
                }
            }
        }
    }
    Ok(out)
}

/// Verdicts for one trace class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub trace: u64,
    pub tested: u64,
    pub permutations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub p: u64,
    pub n: usize,
    /// Every b with nonzero trace was tested; otherwise one b per class
    /// plus random extras.
    pub exhaustive: bool,
    pub rows: Vec<ClassRow>,
}

impl Classification {
    /// Traces whose every tested b gave a permutation.
    pub fn permutation_traces(&self) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| r.permutations == r.tested)
            .map(|r| r.trace)
            .collect()
    }

    /// Traces where at least one tested b gave a permutation.
    pub fn any_permutation(&self) -> bool {
        self.rows.iter().any(|r| r.permutations > 0)
    }
}

/// Permutation verdicts for b ∈ F_{p^n} with trace(b) ≠ 0, grouped by
/// trace. All such b are tested when p^{2n} fits in the budget.
pub fn classify_all_b(
    p: u64,
    n: usize,
    extras: usize,
    seed: u64,
    budget: u64,
    exec: &Exec,
) -> Result<Classification, SearchError> {
    let cfg = make_field(p, n)?;
    let q = cfg.order().unwrap_or(u128::MAX);
    if q > budget as u128 {
        return Err(SearchError::BudgetExceeded { size: q, budget });
    }
    let q = q as u64;
    let exhaustive = (q as u128) * (q as u128) <= budget as u128;
    let bs: Vec<ExtElement> = if exhaustive {
        (0..q).map(|i| cfg.element_at(i)).filter(|b| cfg.trace(b) != 0).collect()
    } else {
        transversal(&cfg, extras, seed)
    };
    let seq = Exec::sequential();
    let verdicts = exec.map(0..bs.len() as u64, |k| {
        let inst = ProblemInstance::new(cfg.clone(), bs[k as usize].clone())?;
        is_permutation(&inst, budget, &seq)
    });
    let mut rows: BTreeMap<u64, ClassRow> = BTreeMap::new();
    for (b, verdict) in bs.iter().zip(verdicts) {
        let trace = cfg.trace(b);
        let row = rows.entry(trace).or_insert(ClassRow {
            trace,
            tested: 0,
            permutations: 0,
        });
        row.tested += 1;
        row.permutations += verdict?.is_permutation() as u64;
    }
    Ok(Classification {
        p,
        n,
        exhaustive,
        rows: rows.into_values().collect(),
    })
}

/// The first b of each nonzero trace in enumeration order, then `extras`
/// random b with nonzero trace.
fn transversal(cfg: &FieldConfig, extras: usize, seed: u64) -> Vec<ExtElement> {
    let p = cfg.p();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut i = 0;
    while seen.len() < (p - 1) as usize {
        let b = cfg.element_at(i);
        let tr = cfg.trace(&b);
        if tr != 0 && seen.insert(tr) {
            out.push(b);
        }
        i += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = cfg.size().expect("budget-checked field size");
    while out.len() < (p - 1) as usize + extras {
        let b = cfg.element_at(rng.gen_range(0..q));
        if cfg.trace(&b) != 0 {
            out.push(b);
        }
    }
    out
}
