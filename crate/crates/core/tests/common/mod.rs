#![allow(dead_code)]

use nalgebra::DMatrix;
use thirdq::model::{BathVector, QuadraticModel};
use thirdq::numerics::{conj, exchange};
use thirdq::{ComplexMatrix, C64};

/// Reads numbers in order from a flat buffer, wrapping around.
pub struct Feed<'a> {
    pub v: &'a [f64],
    pub i: usize,
}

impl Feed<'_> {
    pub fn new(v: &[f64]) -> Feed<'_> {
        Feed { v, i: 0 }
    }

    pub fn next(&mut self) -> f64 {
        let x = self.v[self.i % self.v.len()];
        self.i += 1;
        x
    }

    pub fn c(&mut self) -> C64 {
        C64::new(self.next(), self.next())
    }

    pub fn matrix(&mut self, n: usize) -> ComplexMatrix {
        DMatrix::from_fn(n, n, |_, _| self.c())
    }
}

/// Model whose `H`, `K` are reflection-symmetric and whose real baths come in
/// pairs `(l, k)`, `(P k, P l)`.
pub fn huber_model(f: &mut Feed, n: usize, pairs: usize) -> QuadraticModel {
    let p = exchange(n);
    let half = C64::new(0.5, 0.0);
    let r = f.matrix(n);
    let a = (&r + r.adjoint()) * half;
    let h = (&a + &p * conj(&a) * &p) * half;
    let r = f.matrix(n);
    let b = (&r + r.transpose()) * half;
    let k = (&b + &p * conj(&b) * &p) * half;
    let mut baths = Vec::new();
    for _ in 0..pairs {
        let l: Vec<C64> = (0..n).map(|_| C64::new(f.next(), 0.0)).collect();
        let kk: Vec<C64> = (0..n).map(|_| C64::new(f.next(), 0.0)).collect();
        let rev = |v: &[C64]| v.iter().rev().copied().collect::<Vec<_>>();
        baths.push(BathVector::new(rev(&kk), rev(&l)));
        baths.push(BathVector::new(l, kk));
    }
    QuadraticModel::new(h, k, baths).unwrap()
}

/// Random model with no imposed symmetry.
pub fn random_model(f: &mut Feed, n: usize, nb: usize) -> QuadraticModel {
    let half = C64::new(0.5, 0.0);
    let r = f.matrix(n);
    let h = (&r + r.adjoint()) * half;
    let r = f.matrix(n);
    let k = (&r + r.transpose()) * half;
    let baths = (0..nb)
        .map(|_| BathVector::new((0..n).map(|_| f.c()).collect(), (0..n).map(|_| f.c()).collect()))
        .collect();
    QuadraticModel::new(h, k, baths).unwrap()
}
