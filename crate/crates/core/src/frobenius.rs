//! Single-row (knapsack) tools: the gcd chain, Brauer's bound on the
//! Frobenius number, and the box shape of the projected lattice.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};

/// Largest modulus the residue-table oracle accepts by default.
pub const DEFAULT_DP_CAP: u64 = 1_000_000;

/// `f_1 = a_1`, `f_i = gcd(a_1, ..., a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FChain(pub Vec<Integer>);

impl FChain {
    pub fn values(&self) -> &[Integer] {
        &self.0
    }

    pub fn last(&self) -> &Integer {
        self.0.last().expect("chain of a nonempty vector")
    }
}

fn check_positive(a: &[Integer]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::Input("empty coefficient vector".into()));
    }
    match a.iter().position(|x| !x.is_positive()) {
        Some(index) => Err(Error::NonPositiveEntry { index }),
        None => Ok(()),
    }
}

pub fn f_chain(a: &[Integer]) -> Result<FChain> {
    check_positive(a)?;
    let mut out = Vec::with_capacity(a.len());
    let mut g = a[0].clone();
    out.push(g.clone());
    for x in &a[1..] {
        g = g.gcd(x);
        out.push(g.clone());
    }
    Ok(FChain(out))
}

/// Brauer's bound `G(a) = Σ_{i>=2} a_i f_{i-1} / f_i - Σ_i a_i` on the Frobenius number.
pub fn brauer_g(a: &[Integer]) -> Result<Integer> {
    let f = f_chain(a)?;
    if !f.last().is_one() {
        return Err(Error::GcdNotOne(f.last().to_string()));
    }
    let f = f.values();
    let weighted: Integer = (1..a.len()).map(|i| &a[i] * (&f[i - 1] / &f[i])).sum();
    let total: Integer = a.iter().sum();
    Ok(weighted - total)
}

/// True when `b > G(a)`, the region where the box-reduction lift of a
/// single-row system is always nonnegative.
pub fn above_brauer_bound(a: &[Integer], b: &Integer) -> Result<bool> {
    Ok(*b > brauer_g(a)?)
}

/// Exact Frobenius number by shortest paths over residues modulo the
/// smallest entry. Only intended for small moduli.
pub fn frobenius_number_dp(a: &[Integer], cap: u64) -> Result<Integer> {
    let f = f_chain(a)?;
    if !f.last().is_one() {
        return Err(Error::GcdNotOne(f.last().to_string()));
    }
    let modulus = a.iter().min().expect("nonempty").clone();
    let md = match modulus.to_u64() {
        Some(v) if v <= cap => v,
        _ => return Err(Error::CapExceeded { modulus: modulus.to_string(), cap }),
    };
    let coins: Vec<u64> = a
        .iter()
        .map(|x| x.to_u64().ok_or_else(|| Error::Input(format!("entry {x} too large for the residue table"))))
        .collect::<Result<_>>()?;
    let m = md as usize;
    // dist[r]: smallest representable value congruent to r.
    let mut dist = vec![u128::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u128, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &c in &coins {
            let nd = d + c as u128;
            let nr = ((r as u64 + c % md) % md) as usize;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    let worst = *dist.iter().max().expect("modulus >= 1");
    Ok(Integer::from(worst) - modulus)
}

/// Side lengths `f_1/f_2, ..., f_{n-1}/f_n` of the box of the projected
/// lattice `{x : a_2 x_1 + ... + a_n x_{n-1} ≡ 0 mod a_1}`.
pub fn box_shape(a: &[Integer]) -> Result<Vec<Rational>> {
    let f = f_chain(a)?;
    Ok(f.values().windows(2).map(|w| Rational::new(w[0].clone(), w[1].clone())).collect())
}
