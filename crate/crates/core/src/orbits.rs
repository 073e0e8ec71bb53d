//! Exhaustive orbit census of the split similitude group acting on the
//! 8-dimensional cube space over a small prime field.
//!
//! States are cubes with coordinates `(a, e1, e2, e3, f1, f2, f3, b)`
//! packed base-`p` into a `u32` index. The group is generated (as a group,
//! hence as a semigroup since it is finite) by
//!
//! * the six elementary unipotents `n_-(u_j)`, `n_+(u_j)` for the three
//!   diagonal basis vectors `u_j`, and
//! * one torus element `t(1, g)` with `g` a primitive root modulo `p`,
//!
//! whose verified 8x8 matrices are taken from the group action module.
//! A breadth-first sweep of the whole state space partitions it into
//! orbits; for each orbit the census records the minimal packed index,
//! the size, and the square class of the quartic invariant, which is
//! checked to be constant along the orbit state by state.

use thiserror::Error;

use crate::cube::{gen_matrix8, Cube, Gen};
use crate::etale::CubicAlg;
use crate::field::{FieldError, Fp, FpCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("state space p^8 = {0} exceeds the enumeration bound")]
    ModulusTooLarge(u64),
    #[error("quartic invariant class is not constant on an orbit")]
    ClassNotConstant,
    #[error("{0}")]
    Field(#[from] FieldError),
}

/// Largest admissible state space; p = 5 and p = 7 fit comfortably.
const MAX_STATES: u64 = 20_000_000;

/// `|SL_2(F_p)|^3 (p - 1)`, the order of the split similitude group
/// (triples of 2x2 matrices with a common determinant).
pub fn split_group_order(p: u64) -> u64 {
    let sl2 = p * (p - 1) * (p + 1);
    sl2 * sl2 * sl2 * (p - 1)
}

/// Smallest primitive root modulo a prime.
pub fn primitive_root(p: u64) -> u64 {
    'outer: for g in 2..p {
        let mut x = g;
        for _ in 1..p - 2 {
            x = x * g % p;
            if x == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    /// Minimal packed index of the orbit, used as its identifier.
    pub id: u32,
    pub size: u64,
    /// Canonical square-class representative of the quartic invariant:
    /// 0, 1, or the smallest nonresidue.
    pub delta_class: u64,
    /// Coordinates `(a, e1, e2, e3, f1, f2, f3, b)` of the minimal state.
    pub representative: [u64; 8],
}

#[derive(Debug, Clone)]
pub struct OrbitCensus {
    pub p: u64,
    pub orbits: Vec<OrbitInfo>,
}

impl OrbitCensus {
    pub fn total_states(&self) -> u64 {
        self.orbits.iter().map(|o| o.size).sum()
    }

    /// Orbits with nonzero quartic invariant.
    pub fn generic(&self) -> Vec<&OrbitInfo> {
        self.orbits.iter().filter(|o| o.delta_class != 0).collect()
    }

    /// CSV rendering: `orbit_id,size,delta_class,representative`, with the
    /// representative as colon-joined coordinates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("orbit_id,size,delta_class,representative\n");
        for o in &self.orbits {
            let rep = o
                .representative
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(":");
            out.push_str(&format!(
                "{},{},{},{}\n",
                o.id, o.size, o.delta_class, rep
            ));
        }
        out
    }
}

fn pack(p: u64, coords: &[u64; 8]) -> u32 {
    let mut idx = 0u64;
    for &c in coords.iter().rev() {
        idx = idx * p + c;
    }
    idx as u32
}

fn unpack(p: u64, mut idx: u64) -> [u64; 8] {
    let mut coords = [0u64; 8];
    for c in coords.iter_mut() {
        *c = idx % p;
        idx /= p;
    }
    coords
}

/// The quartic invariant of a packed split cube, by the closed split
/// formula (cross-checked in tests against the structural evaluation):
///
/// ```text
/// D = a^2 b^2 - 2 a b Sum e_i f_i + Sum (e_i f_i)^2
///     + 4 a f1 f2 f3 + 4 b e1 e2 e3 - 2 Sum_{i<j} e_i e_j f_i f_j.
/// ```
fn packed_delta(p: u64, c: &[u64; 8]) -> u64 {
    let m = |x: u64, y: u64| x * y % p;
    let a = c[0];
    let e = [c[1], c[2], c[3]];
    let f = [c[4], c[5], c[6]];
    let b = c[7];
    let mut acc = m(m(a, a), m(b, b));
    let ab = m(a, b);
    for i in 0..3 {
        let ef = m(e[i], f[i]);
        acc = (acc + p - m(2 % p, m(ab, ef)) % p) % p;
        acc = (acc + m(ef, ef)) % p;
    }
    acc = (acc + m(4 % p, m(a, m(f[0], m(f[1], f[2]))))) % p;
    acc = (acc + m(4 % p, m(b, m(e[0], m(e[1], e[2]))))) % p;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let t = m(m(e[i], e[j]), m(f[i], f[j]));
            acc = (acc + p - m(2 % p, t) % p) % p;
        }
    }
    acc
}

/// Square-class representative of a value mod p: 0, 1, or the smallest
/// nonresidue.
fn class_rep(ctx: &FpCtx, v: u64) -> u64 {
    if v == 0 {
        0
    } else if ctx.el(v as i64).is_square() {
        1
    } else {
        ctx.smallest_nonresidue().value()
    }
}

/// The seven generator matrices, taken from the verified 8x8 realization
/// of the group generators.
fn generator_matrices(alg: &CubicAlg<Fp>) -> Vec<[[u64; 8]; 8]> {
    let ctx = alg.ctx();
    let mut gens: Vec<Gen<Fp>> = Vec::new();
    for j in 0..3 {
        gens.push(Gen::unip_lower(alg.basis(j)));
        gens.push(Gen::unip_upper(alg.basis(j)));
    }
    let g = primitive_root(ctx.prime());
    let beta = alg.scalar(ctx.el(g as i64));
    gens.push(Gen::torus(alg, alg.unit(), beta).expect("valid torus"));
    gens.iter()
        .map(|gen| {
            let m = gen_matrix8(alg, gen);
            let mut out = [[0u64; 8]; 8];
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    out[i][j] = x.value();
                }
            }
            out
        })
        .collect()
}

fn apply_packed(p: u64, m: &[[u64; 8]; 8], v: &[u64; 8]) -> [u64; 8] {
    let mut out = [0u64; 8];
    for (i, row) in m.iter().enumerate() {
        let mut acc = 0u64;
        for (x, y) in row.iter().zip(v.iter()) {
            acc += x * y % p;
        }
        out[i] = acc % p;
    }
    out
}

fn check_bound(p: u64) -> Result<u64, OrbitError> {
    let states = p.pow(8);
    if states > MAX_STATES {
        return Err(OrbitError::ModulusTooLarge(states));
    }
    Ok(states)
}

/// Breadth-first closure of a single orbit. `visited` is shared across
/// calls so a full sweep never revisits states. Returns the orbit size
/// while checking that the invariant class is constant.
fn sweep_orbit(
    p: u64,
    mats: &[[[u64; 8]; 8]],
    visited: &mut [bool],
    start: u32,
    ctx: &FpCtx,
) -> Result<(u64, u64), OrbitError> {
    let start_coords = unpack(p, start as u64);
    let class = class_rep(ctx, packed_delta(p, &start_coords));
    let mut stack: Vec<u32> = vec![start];
    visited[start as usize] = true;
    let mut size = 0u64;
    while let Some(s) = stack.pop() {
        size += 1;
        let coords = unpack(p, s as u64);
        for m in mats {
            let next = apply_packed(p, m, &coords);
            let idx = pack(p, &next);
            if !visited[idx as usize] {
                visited[idx as usize] = true;
                if class_rep(ctx, packed_delta(p, &next)) != class {
                    return Err(OrbitError::ClassNotConstant);
                }
                stack.push(idx);
            }
        }
    }
    Ok((size, class))
}

/// Size of the orbit of one cube.
pub fn orbit_size(ctx: &FpCtx, v: &Cube<Fp>) -> Result<u64, OrbitError> {
    let p = ctx.prime();
    let states = check_bound(p)?;
    let alg = CubicAlg::<Fp>::split(ctx);
    let mats = generator_matrices(&alg);
    let coords: [u64; 8] = {
        let c = v.coords();
        std::array::from_fn(|i| c[i].value())
    };
    let mut visited = vec![false; states as usize];
    let (size, _) = sweep_orbit(p, &mats, &mut visited, pack(p, &coords), ctx)?;
    Ok(size)
}

/// Partition the whole state space into orbits.
pub fn full_census(ctx: &FpCtx) -> Result<OrbitCensus, OrbitError> {
    let p = ctx.prime();
    let states = check_bound(p)?;
    let alg = CubicAlg::<Fp>::split(ctx);
    let mats = generator_matrices(&alg);
    let mut visited = vec![false; states as usize];
    let mut orbits = Vec::new();
    for start in 0..states {
        if visited[start as usize] {
            continue;
        }
        let (size, class) = sweep_orbit(p, &mats, &mut visited, start as u32, ctx)?;
        orbits.push(OrbitInfo {
            id: start as u32,
            size,
            delta_class: class,
            representative: unpack(p, start),
        });
    }
    Ok(OrbitCensus { p, orbits })
}

/// Pack a cube into its state index (for locating it in a census).
pub fn cube_index(ctx: &FpCtx, v: &Cube<Fp>) -> u32 {
    let c = v.coords();
    let coords: [u64; 8] = std::array::from_fn(|i| c[i].value());
    pack(ctx.prime(), &coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::delta;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn packing_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(443);
        for p in [5u64, 7] {
            for _ in 0..50 {
                let coords: [u64; 8] = std::array::from_fn(|_| rng.gen_range(0..p));
                assert_eq!(unpack(p, pack(p, &coords) as u64), coords);
            }
        }
    }

    #[test]
    fn packed_delta_matches_structural_delta() {
        let mut rng = ChaCha8Rng::seed_from_u64(449);
        for p in [5u64, 7, 11, 13] {
            let ctx = FpCtx::new(p).unwrap();
            let alg = CubicAlg::<Fp>::split(&ctx);
            for _ in 0..100 {
                let coords: [u64; 8] = std::array::from_fn(|_| rng.gen_range(0..p));
                let felts: [Fp; 8] = std::array::from_fn(|i| ctx.el(coords[i] as i64));
                let cube = Cube::from_coords(felts);
                assert_eq!(
                    packed_delta(p, &coords),
                    delta(&alg, &cube).value()
                );
            }
        }
    }

    #[test]
    fn primitive_roots_are_correct() {
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(11), 2);
        assert_eq!(primitive_root(13), 2);
    }

    #[test]
    fn group_order_values() {
        assert_eq!(split_group_order(5), 6_912_000);
        assert_eq!(split_group_order(7), 227_598_336);
    }

    #[test]
    fn base_point_orbit_over_f5() {
        let ctx = FpCtx::new(5).unwrap();
        let alg = CubicAlg::<Fp>::split(&ctx);
        let v0 = Cube::base_point(&alg);
        let size = orbit_size(&ctx, &v0).unwrap();
        assert_eq!(size, 216_000);
        // Orbit-stabilizer: the stabilizer has order 2 (p - 1)^2.
        assert_eq!(split_group_order(5) / size, 32);
    }

    #[test]
    fn census_over_f5() {
        let ctx = FpCtx::new(5).unwrap();
        let census = full_census(&ctx).unwrap();
        assert_eq!(census.total_states(), 5u64.pow(8));
        let generic = census.generic();
        assert_eq!(generic.len(), 2, "exactly two orbits with nonzero invariant");
        let mut sizes: Vec<(u64, u64)> = generic
            .iter()
            .map(|o| (o.delta_class, o.size))
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![(1, 216_000), (2, 96_000)]);
        // Stabilizer of the second generic orbit has order 72.
        assert_eq!(split_group_order(5) / 96_000, 72);
        // The base point lies in the square-class orbit.
        let alg = CubicAlg::<Fp>::split(&ctx);
        let v0 = Cube::base_point(&alg);
        let size = orbit_size(&ctx, &v0).unwrap();
        assert_eq!(size, 216_000);
        let matching: Vec<_> = census
            .orbits
            .iter()
            .filter(|o| o.size == size && o.delta_class == 1)
            .collect();
        assert_eq!(matching.len(), 1);
        // CSV output is well-formed and deterministic.
        let csv = census.to_csv();
        let csv2 = full_census(&ctx).unwrap().to_csv();
        assert_eq!(csv, csv2);
        assert!(csv.starts_with("orbit_id,size,delta_class,representative\n"));
        assert_eq!(csv.lines().count(), census.orbits.len() + 1);
    }
}
