//! Duals of the differentials of the truncated resolution, acting on
//! cochains by precomposition.

use num_rational::BigRational;

use super::Func;
use crate::error::{Error, Result};

type Term = (i64, Vec<Vec<usize>>);

fn combine(f: &Func, arity: usize, terms: &[Term]) -> Result<Func> {
    let mut out = Func::zero(f.kind(), arity);
    for (sign, args) in terms {
        let g = f.precompose(args, arity)?;
        out = out.add(&g.scaled(&BigRational::from_integer((*sign).into())));
    }
    Ok(out)
}

fn expect_arity(f: &Func, arity: usize) -> Result<()> {
    if f.arity() == arity {
        Ok(())
    } else {
        Err(Error::Arity {
            expected: arity,
            got: f.arity(),
        })
    }
}

fn v(vars: &[usize]) -> Vec<usize> {
    vars.to_vec()
}

/// `f ↦ f(x+y) - f(x) - f(y)`.
pub fn pullback_d1(f: &Func) -> Result<Func> {
    expect_arity(f, 1)?;
    combine(
        f,
        2,
        &[
            (1, vec![v(&[0, 1])]),
            (-1, vec![v(&[0])]),
            (-1, vec![v(&[1])]),
        ],
    )
}

/// Image of a 2-cochain: components on `G^3` and `G^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Image {
    pub g3: Func,
    pub g2: Func,
}

impl D2Image {
    pub fn is_zero(&self) -> bool {
        self.g3.is_zero() && self.g2.is_zero()
    }
}

pub fn pullback_d2(f: &Func) -> Result<D2Image> {
    expect_arity(f, 2)?;
    let (x, y, z) = (0, 1, 2);
    let g3 = combine(
        f,
        3,
        &[
            (1, vec![v(&[x, y]), v(&[z])]),
            (-1, vec![v(&[y]), v(&[z])]),
            (-1, vec![v(&[x]), v(&[y, z])]),
            (1, vec![v(&[x]), v(&[y])]),
        ],
    )?;
    let g2 = combine(
        f,
        2,
        &[(1, vec![v(&[x]), v(&[y])]), (-1, vec![v(&[y]), v(&[x])])],
    )?;
    Ok(D2Image { g3, g2 })
}

/// Image of a pair (3-cochain on `G^3`, 2-cochain on `G^2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D3Image {
    pub g4: Func,
    pub g3a: Func,
    pub g3b: Func,
    pub g2: Func,
    pub g1: Func,
}

impl D3Image {
    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|f| f.is_zero())
    }

    pub fn components(&self) -> [&Func; 5] {
        [&self.g4, &self.g3a, &self.g3b, &self.g2, &self.g1]
    }
}

pub fn pullback_d3(f: &Func, g: &Func) -> Result<D3Image> {
    expect_arity(f, 3)?;
    expect_arity(g, 2)?;
    if f.kind() != g.kind() {
        return Err(Error::Shape(
            "cochains live in different function spaces".into(),
        ));
    }
    let (x, y, z, w) = (0, 1, 2, 3);
    let g4 = combine(
        f,
        4,
        &[
            (-1, vec![v(&[y]), v(&[z]), v(&[w])]),
            (1, vec![v(&[x, y]), v(&[z]), v(&[w])]),
            (-1, vec![v(&[x]), v(&[y, z]), v(&[w])]),
            (1, vec![v(&[x]), v(&[y]), v(&[z, w])]),
            (-1, vec![v(&[x]), v(&[y]), v(&[z])]),
        ],
    )?;
    let g3a = combine(
        g,
        3,
        &[
            (-1, vec![v(&[y]), v(&[z])]),
            (1, vec![v(&[x, y]), v(&[z])]),
            (-1, vec![v(&[x]), v(&[z])]),
        ],
    )?
    .add(&combine(
        f,
        3,
        &[
            (-1, vec![v(&[x]), v(&[y]), v(&[z])]),
            (1, vec![v(&[x]), v(&[z]), v(&[y])]),
            (-1, vec![v(&[z]), v(&[x]), v(&[y])]),
        ],
    )?);
    let g3b = combine(
        g,
        3,
        &[
            (-1, vec![v(&[x]), v(&[z])]),
            (1, vec![v(&[x]), v(&[y, z])]),
            (-1, vec![v(&[x]), v(&[y])]),
        ],
    )?
    .add(&combine(
        f,
        3,
        &[
            (1, vec![v(&[x]), v(&[y]), v(&[z])]),
            (-1, vec![v(&[y]), v(&[x]), v(&[z])]),
            (1, vec![v(&[y]), v(&[z]), v(&[x])]),
        ],
    )?);
    let g2 = combine(
        g,
        2,
        &[(1, vec![v(&[x]), v(&[y])]), (1, vec![v(&[y]), v(&[x])])],
    )?;
    let g1 = combine(g, 1, &[(1, vec![v(&[x]), v(&[x])])])?;
    Ok(D3Image {
        g4,
        g3a,
        g3b,
        g2,
        g1,
    })
}
