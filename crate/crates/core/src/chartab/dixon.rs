use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::coefficients::{class_coefficients, power_maps, ClassCoefficients, PowerMaps};
use super::split::central_characters;
use super::{Character, CharacterTable};
use crate::cyclotomic::{choose_field, first_field_after, ModField};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, exponent_of, isqrt, ConjClassSet, Group, Subgroup};

/// How many further primes are tried after the first field fails.
pub const MAX_FIELD_RETRIES: usize = 5;

/// Computes the complete character table of `g`.
pub fn dixon_character_table(g: &Group) -> Result<CharacterTable> {
    let classes = conjugacy_classes(g);
    let e = exponent_of(g);
    let coeffs = class_coefficients(g, &classes);
    let pm = power_maps(g, &classes, e);
    let n = g.order() as u64;
    let mut field = choose_field(n, e as u32);
    let mut last_err = None;
    for _ in 0..=MAX_FIELD_RETRIES {
        match attempt(g, &classes, &coeffs, &pm, &field) {
            Ok(chars) => {
                return Ok(CharacterTable::assemble(g, classes, e as u32, field, chars));
            }
            Err(err @ (Error::SplitIncomplete { .. } | Error::DegreeNotSquare { .. } | Error::LiftFailed { .. })) => {
                last_err = Some(err);
                field = first_field_after(n, e as u32, field.q);
            }
            Err(other) => return Err(other),
        }
    }
    Err(last_err.expect("at least one attempt ran"))
}

fn attempt(
    g: &Group,
    classes: &ConjClassSet,
    coeffs: &ClassCoefficients,
    pm: &PowerMaps,
    f: &ModField,
) -> Result<Vec<Character>> {
    let k = classes.len();
    let n = g.order() as u64;
    let h: Vec<u64> = classes.sizes().into_iter().map(|s| s as u64).collect();
    let inv_class: Vec<usize> = (0..k).map(|i| classes.inverse_class(g, i)).collect();
    let h_inv: Vec<u64> = h.iter().map(|&x| f.inv(f.reduce(x))).collect();
    let orders: Vec<u64> = classes.classes.iter().map(|c| g.element_order(c.rep)).collect();
    let omegas = f.omega_powers();
    let dlog: HashMap<u64, u32> = omegas.iter().enumerate().map(|(j, &w)| (w, j as u32)).collect();

    let central = central_characters(coeffs, f)?;
    if central.len() != k {
        return Err(Error::SplitIncomplete {
            q: f.q,
            detail: format!("{} central characters for {k} classes", central.len()),
        });
    }

    let mut out = Vec::with_capacity(k);
    for w in central {
        // Σ ω_i ω_{i*} / h_i = |G| / χ(1)²
        let s = (0..k).fold(0, |acc, i| f.add(acc, f.mul(f.mul(w[i], w[inv_class[i]]), h_inv[i])));
        if s == 0 {
            return Err(Error::DegreeNotSquare { q: f.q, detail: "degree sum vanishes".into() });
        }
        let target = f.mul(f.reduce(n), f.inv(s));
        let d = (1..=isqrt(n))
            .find(|&d| f.mul(d % f.q, d % f.q) == target)
            .ok_or_else(|| Error::DegreeNotSquare {
                q: f.q,
                detail: format!("|G|/S = {target} is not the square of an admissible degree"),
            })?;
        if n % d != 0 {
            return Err(Error::DegreeNotSquare { q: f.q, detail: format!("degree {d} does not divide |G|") });
        }
        let dq = f.reduce(d);
        let values: Vec<u64> = (0..k).map(|i| f.mul(f.mul(dq, w[i]), h_inv[i])).collect();
        let mults = if d == 1 {
            lift_linear(&values, &dlog, f)?
        } else {
            lift_general(&values, d, &orders, pm, f)?
        };
        for (i, m) in mults.iter().enumerate() {
            let img = m.iter().fold(0, |acc, &(j, c)| f.add(acc, f.mul(c as u64 % f.q, omegas[j as usize])));
            if img != values[i] {
                return Err(Error::LiftFailed {
                    q: f.q,
                    detail: format!("class {i}: multiplicities do not reproduce the modular value"),
                });
            }
        }
        out.push((d, values, mults));
    }

    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(out
        .into_iter()
        .map(|(d, modq, mults)| {
            let mut kernel = FixedBitSet::with_capacity(g.order());
            let mut center = FixedBitSet::with_capacity(g.order());
            for (i, m) in mults.iter().enumerate() {
                if let [(j, c)] = m.as_slice() {
                    if *c as u64 == d {
                        for &x in &classes.classes[i].members {
                            center.insert(x as usize);
                            if *j == 0 {
                                kernel.insert(x as usize);
                            }
                        }
                    }
                }
            }
            Character {
                degree: d,
                mults,
                modq,
                kernel: Subgroup::from_set_normal(g, kernel),
                center: Subgroup::from_set_normal(g, center),
            }
        })
        .collect())
}

/// Linear characters take root-of-unity values, read off by discrete log.
fn lift_linear(values: &[u64], dlog: &HashMap<u64, u32>, f: &ModField) -> Result<Vec<Vec<(u32, u32)>>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            dlog.get(v).map(|&j| vec![(j, 1)]).ok_or_else(|| Error::LiftFailed {
                q: f.q,
                detail: format!("linear value at class {i} is not an e-th root of unity"),
            })
        })
        .collect()
}

/// Eigenvalue multiplicities by discrete Fourier inversion along the powers
/// of each class representative. Only roots of unity of order dividing the
/// element order `o` can occur, so the transform runs over `t < o`.
fn lift_general(
    values: &[u64],
    d: u64,
    orders: &[u64],
    pm: &PowerMaps,
    f: &ModField,
) -> Result<Vec<Vec<(u32, u32)>>> {
    let e = pm.exponent() as u64;
    let mut out = Vec::with_capacity(values.len());
    for (i, &o) in orders.iter().enumerate() {
        let step = e / o;
        // ζ_o = ω^step
        let zeta = f.pow(f.omega, step);
        let zeta_inv = f.inv(zeta);
        let o_inv = f.inv(f.reduce(o));
        let chi_pow: Vec<u64> = (0..o as usize).map(|t| values[pm.get(i, t)]).collect();
        let mut row = Vec::new();
        let mut total = 0u64;
        let mut base = 1u64; // ζ_o^{-s}
        for s in 0..o {
            let mut acc = 0u64;
            let mut w = 1u64;
            for &c in &chi_pow {
                acc = f.add(acc, f.mul(c, w));
                w = f.mul(w, base);
            }
            let m = f.mul(acc, o_inv);
            if m > d {
                return Err(Error::LiftFailed {
                    q: f.q,
                    detail: format!("class {i}: multiplicity residue {m} exceeds degree {d}"),
                });
            }
            if m > 0 {
                row.push(((s * step) as u32, m as u32));
                total += m;
            }
            base = f.mul(base, zeta_inv);
        }
        if total != d {
            return Err(Error::LiftFailed {
                q: f.q,
                detail: format!("class {i}: multiplicities sum to {total}, expected {d}"),
            });
        }
        out.push(row);
    }
    Ok(out)
}
