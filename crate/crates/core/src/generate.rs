//! Instance generators: random frameworks, random layered instances with a
//! conflict-free extension, and the two structured families relating the
//! constrained and unconstrained optima.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::af::{ArgumentationFramework, Extension};

/// An AF together with the extension to draw it for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub af: ArgumentationFramework,
    pub extension: Extension,
}

impl Instance {
    fn new(name: String, af: ArgumentationFramework, members: Vec<usize>) -> Self {
        let extension = Extension::from_indices(&af, members).expect("generated ids are valid");
        Self {
            name,
            af,
            extension,
        }
    }
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `n` arguments `a1..an`, each ordered pair (self-attacks included) an
/// attack with probability `p`.
pub fn random_af<R: Rng>(rng: &mut R, n: usize, p: f64) -> ArgumentationFramework {
    let mut attacks = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(p) {
                attacks.push((a, b));
            }
        }
    }
    ArgumentationFramework::from_parts(numbered("a", n), attacks).expect("valid ids")
}

/// Shape of a random layered instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayeredParams {
    pub max_in: usize,
    pub max_out: usize,
    pub max_undec: usize,
    pub max_attacks: usize,
}

impl LayeredParams {
    pub fn small() -> Self {
        Self {
            max_in: 6,
            max_out: 6,
            max_undec: 6,
            max_attacks: 18,
        }
    }
}

/// A random instance whose labeling has at most the given layer sizes and
/// attack count. Every OUT argument gets an IN attacker; UNDEC arguments
/// are never attacked from IN; the extension is conflict-free.
pub fn random_layered<R: Rng>(rng: &mut R, params: LayeredParams, name: String) -> Instance {
    let ni = rng.gen_range(1..=params.max_in.max(1));
    let no = rng.gen_range(0..=params.max_out).min(params.max_attacks);
    let nu = rng.gen_range(0..=params.max_undec);
    let mut names = numbered("i", ni);
    names.extend(numbered("o", no));
    names.extend(numbered("u", nu));
    let ins: Vec<usize> = (0..ni).collect();
    let outs: Vec<usize> = (ni..ni + no).collect();
    let undecs: Vec<usize> = (ni + no..ni + no + nu).collect();

    let mut attacks = Vec::new();
    for &o in &outs {
        attacks.push((*ins.choose(rng).unwrap(), o));
    }
    // candidate extra attacks; IN never attacks IN or UNDEC
    let mut extra = Vec::new();
    for &o in &outs {
        for &i in &ins {
            extra.push((i, o));
            extra.push((o, i));
        }
        for &o2 in &outs {
            extra.push((o, o2));
        }
        for &u in &undecs {
            extra.push((o, u));
            extra.push((u, o));
        }
    }
    for &u in &undecs {
        for &u2 in &undecs {
            extra.push((u, u2));
        }
        if rng.gen_bool(0.1) {
            extra.push((u, *ins.choose(rng).unwrap()));
        }
    }
    extra.shuffle(rng);
    let budget = params.max_attacks.saturating_sub(attacks.len());
    let take = rng.gen_range(0..=budget.min(extra.len()));
    attacks.extend(extra.into_iter().take(take));
    let af = ArgumentationFramework::from_parts(names, attacks).expect("valid ids");
    Instance::new(name, af, ins)
}

/// Stable extension `{u, v}`: `k` arguments adjacent to both, plus
/// `pad_u` and `pad_v` arguments attacked only by `u` resp. `v`. Edges
/// between a shared neighbor and one extension member may point either way;
/// each shared neighbor stays attacked by at least one of them.
pub fn theorem1_instance<R: Rng>(rng: &mut R, k: usize, pad_u: usize, pad_v: usize) -> Instance {
    let mut names = vec!["u".to_string(), "v".to_string()];
    names.extend(numbered("x", k));
    names.extend(numbered("pu", pad_u));
    names.extend(numbered("pv", pad_v));
    let mut attacks = Vec::new();
    for x in 2..2 + k {
        match rng.gen_range(0..3) {
            0 => attacks.extend([(0, x), (1, x)]),
            1 => attacks.extend([(x, 0), (1, x)]),
            _ => attacks.extend([(0, x), (x, 1)]),
        }
    }
    for p in 2 + k..2 + k + pad_u {
        attacks.push((0, p));
    }
    for p in 2 + k + pad_u..2 + k + pad_u + pad_v {
        attacks.push((1, p));
    }
    let mut order: Vec<usize> = (2..names.len()).collect();
    order.shuffle(rng);
    let af = shuffled(names, attacks, 2, &order);
    Instance::new(format!("thm1_k{k}_pu{pad_u}_pv{pad_v}"), af, vec![0, 1])
}

/// Rebuilds an AF declaring the first `fixed` arguments in place and the
/// rest in `order`, so generated instances do not start pre-sorted.
fn shuffled(
    names: Vec<String>,
    attacks: Vec<(usize, usize)>,
    fixed: usize,
    order: &[usize],
) -> ArgumentationFramework {
    let mut new_id: Vec<usize> = (0..names.len()).collect();
    let mut new_names: Vec<String> = names[..fixed].to_vec();
    for (k, &old) in order.iter().enumerate() {
        new_id[old] = fixed + k;
        new_names.push(names[old].clone());
    }
    let attacks: Vec<_> = attacks
        .into_iter()
        .map(|(a, b)| (new_id[a], new_id[b]))
        .collect();
    ArgumentationFramework::from_parts(new_names, attacks).expect("valid ids")
}

/// Parameters of the three-member family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem2Params {
    pub k_uv: usize,
    pub k_vw: usize,
    pub pad_u: usize,
    pub pad_v: usize,
    pub pad_w: usize,
}

/// Stable extension `{u, v, w}` with degree-1 neighbors of each member,
/// `k_uv` neighbors of `u` and `v`, `k_vw` neighbors of `v` and `w`, and
/// one neighbor `a` of `u` and `w`. Every neighbor of `v` with degree two
/// is attacked only by `v` (it attacks its other neighbor); `a` is attacked
/// only by `u` and attacks `w`.
pub fn theorem2_instance(params: Theorem2Params) -> Instance {
    let Theorem2Params {
        k_uv,
        k_vw,
        pad_u,
        pad_v,
        pad_w,
    } = params;
    let mut names = vec![
        "u".to_string(),
        "v".to_string(),
        "w".to_string(),
        "a".to_string(),
    ];
    let mut attacks = vec![(0, 3), (3, 2)];
    let mut add = |prefix: &str, n: usize, edges: &dyn Fn(usize) -> Vec<(usize, usize)>| {
        for name in numbered(prefix, n) {
            let id = names.len();
            names.push(name);
            attacks.extend(edges(id));
        }
    };
    add("xuv", k_uv, &|x| vec![(1, x), (x, 0)]);
    add("xvw", k_vw, &|x| vec![(1, x), (x, 2)]);
    add("pu", pad_u, &|x| vec![(0, x)]);
    add("pv", pad_v, &|x| vec![(1, x)]);
    add("pw", pad_w, &|x| vec![(2, x)]);
    let af = ArgumentationFramework::from_parts(names, attacks).expect("valid ids");
    let name = format!("thm2_uv{k_uv}_vw{k_vw}_p{pad_u}{pad_v}{pad_w}");
    Instance::new(name, af, vec![0, 1, 2])
}

/// Parameter grid of the three-member family: one to three shared
/// neighbors per side, one or two degree-1 neighbors of `u` and of `w`,
/// none of `v`. Degree-1 neighbors on both outer members are what pin `a`
/// between the two groups; without them the IN order can absorb the
/// constraint and both optima coincide.
pub fn theorem2_family() -> Vec<Theorem2Params> {
    let mut out = Vec::new();
    for k_uv in 1..=3 {
        for k_vw in 1..=3 {
            for pad_u in 1..=2 {
                for pad_w in 1..=2 {
                    out.push(Theorem2Params {
                        k_uv,
                        k_vw,
                        pad_u,
                        pad_v: 0,
                        pad_w,
                    });
                }
            }
        }
    }
    out
}
