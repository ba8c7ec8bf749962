//! Known closed-form values of the Z-Randers Heisenberg model, laid out as
//! tables, and their numerical recomputation.
//!
//! Flag curvatures come in eight special families (see [`SpecialFlag`]).
//! Connection components are tabulated for three kinds of pole:
//!
//! | block    | pole                       | rows               | columns            |
//! |----------|----------------------------|--------------------|--------------------|
//! | `table2` | `Z`                        | `e1 … e5`          | `e1 … e5`          |
//! | `table3` | unit `W ∈ span(e1,e2)`     | `W, W⊥, Z`         | `W, W⊥, Z`         |
//! | `table4` | unit `W ∈ span(e1,e2)`     | `e3, e4`           | `W, W⊥`            |
//! | `table5` | unit `W ∈ span(e3,e4)`     | `W, W⊥, Z`         | `W, W⊥, Z`         |
//! | `table6` | unit `W ∈ span(e3,e4)`     | `e1, e2`           | `W, W⊥`            |
//!
//! In `table2`, `e5 = Z/(1+ξ)` is the `⟨,⟩_Z`-unit center vector; closed forms
//! there are written with the Euclidean-unit `Z`. A cell `(row X, column Y)`
//! holds `∇^W_X Y`.

use rand::Rng;

use crate::connection::{chern_rund_table, w_perp};
use crate::curvature::{flag_curvature, SpecialFlag};
use crate::error::Result;
use crate::lie_algebra::{Vector, CENTER};
use crate::randers::RandersStructure;
use crate::sampling::random_unit_in_span;

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub flag: SpecialFlag,
    pub w: Vector,
    pub x: Vector,
    pub computed: f64,
    pub closed_form: f64,
}

impl Table1Row {
    pub fn abs_err(&self) -> f64 {
        (self.computed - self.closed_form).abs()
    }

    /// Error relative to `max(|closed form|, 1)`, which stays meaningful for
    /// the rows whose closed form vanishes at `λ = μ`.
    pub fn rel_err(&self) -> f64 {
        self.abs_err() / self.closed_form.abs().max(1.0)
    }
}

/// One randomly sampled flag per special family, in row order.
pub fn table1_rows<R: Rng + ?Sized>(lambda: f64, mu: f64, xi: f64, rng: &mut R) -> Result<Vec<Table1Row>> {
    let s = RandersStructure::z_randers(lambda, mu, xi)?;
    SpecialFlag::ALL
        .iter()
        .map(|&flag| {
            let (w, x) = flag.sample(rng);
            let report = flag_curvature(&s, &w, &x)?;
            Ok(Table1Row {
                flag,
                w,
                x,
                computed: report.k,
                closed_form: flag.closed_form(lambda, mu, xi)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub row: String,
    pub column: String,
    pub computed: Vector,
    pub closed_form: Vector,
}

impl TableCell {
    /// Euclidean norm of the coordinate difference.
    pub fn defect(&self) -> f64 {
        (&self.computed - &self.closed_form).norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionBlock {
    pub name: &'static str,
    pub pole: Vector,
    pub cells: Vec<TableCell>,
}

impl ConnectionBlock {
    pub fn max_defect(&self) -> f64 {
        self.cells.iter().map(TableCell::defect).fold(0.0, f64::max)
    }
}

fn e(i: usize) -> Vector {
    let mut v = Vector::zeros(5);
    v[i] = 1.0;
    v
}

struct Labeled {
    label: String,
    v: Vector,
}

fn labeled(label: &str, v: Vector) -> Labeled {
    Labeled {
        label: label.to_string(),
        v,
    }
}

fn block(
    s: &RandersStructure,
    name: &'static str,
    pole: Vector,
    rows: &[Labeled],
    columns: &[Labeled],
    closed: &[Vec<Vector>],
) -> Result<ConnectionBlock> {
    let table = chern_rund_table(&s.osculating_gram(&pole)?);
    let mut cells = Vec::with_capacity(rows.len() * columns.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, column) in columns.iter().enumerate() {
            cells.push(TableCell {
                row: format!("nabla_{}", row.label),
                column: column.label.clone(),
                computed: table.covariant(&row.v, &column.v),
                closed_form: closed[r][c].clone(),
            });
        }
    }
    Ok(ConnectionBlock { name, pole, cells })
}

fn center_pole_block(s: &RandersStructure, lambda: f64, mu: f64, xi: f64) -> Result<ConnectionBlock> {
    let z = e(CENTER);
    let e5 = &z / (1.0 + xi);
    let basis: Vec<Labeled> = (0..4)
        .map(|i| labeled(&format!("e{}", i + 1), e(i)))
        .chain(std::iter::once(labeled("e5", e5)))
        .collect();
    let (l, m) = (lambda / 2.0, mu / 2.0);
    let zero = Vector::zeros(5);
    let closed = vec![
        vec![zero.clone(), &z * l, zero.clone(), zero.clone(), e(1) * -l],
        vec![&z * -l, zero.clone(), zero.clone(), zero.clone(), e(0) * l],
        vec![zero.clone(), zero.clone(), zero.clone(), &z * m, e(3) * -m],
        vec![zero.clone(), zero.clone(), &z * -m, zero.clone(), e(2) * m],
        vec![e(1) * -l, e(0) * l, e(3) * -m, e(2) * m, zero],
    ];
    block(s, "table2", z.clone(), &basis, &basis, &closed)
}

/// Pole-adapted block: rows and columns `W, W⊥, Z`, with `nu` the bracket
/// constant of the plane containing `W`.
fn adapted_block(
    s: &RandersStructure,
    name: &'static str,
    w: Vector,
    nu: f64,
    xi: f64,
) -> Result<ConnectionBlock> {
    let z = e(CENTER);
    let wp = w_perp(s.algebra(), &w)?;
    let n2 = nu * nu;
    let mixed = (&w * (xi * xi - 2.0) - &z * xi) * (n2 / 4.0);
    let closed = vec![
        vec![&wp * xi, (&w * xi + &z) * (-n2 / 2.0), &wp * 0.5],
        vec![(&z - &w * xi) * (n2 / 2.0), &wp * (-xi * n2 / 4.0), mixed.clone()],
        vec![&wp * 0.5, mixed, &wp * (xi / 4.0)],
    ];
    let axes = [labeled("W", w.clone()), labeled("Wperp", wp), labeled("Z", z)];
    block(s, name, w, &axes, &axes, &closed)
}

/// Transverse block: rows `e_a, e_b` spanning the plane without `W`, whose
/// bracket constant is `other`; `nu` is the constant of the plane of `W`.
fn transverse_block(
    s: &RandersStructure,
    name: &'static str,
    w: Vector,
    plane: (usize, usize),
    nu: f64,
    other: f64,
    xi: f64,
) -> Result<ConnectionBlock> {
    let wp = w_perp(s.algebra(), &w)?;
    let (a, b) = plane;
    let closed = vec![
        vec![e(b) * (-other * xi / 2.0), e(a) * (-xi * nu * nu / 4.0)],
        vec![e(a) * (other * xi / 2.0), e(b) * (-xi * nu * nu / 4.0)],
    ];
    let rows = [
        labeled(&format!("e{}", a + 1), e(a)),
        labeled(&format!("e{}", b + 1), e(b)),
    ];
    let columns = [labeled("W", w.clone()), labeled("Wperp", wp)];
    block(s, name, w, &rows, &columns, &closed)
}

/// All five connection blocks, with the generic poles drawn from `rng`.
pub fn connection_blocks<R: Rng + ?Sized>(
    lambda: f64,
    mu: f64,
    xi: f64,
    rng: &mut R,
) -> Result<Vec<ConnectionBlock>> {
    let s = RandersStructure::z_randers(lambda, mu, xi)?;
    let w12 = random_unit_in_span(rng, 5, &[0, 1]);
    let w34 = random_unit_in_span(rng, 5, &[2, 3]);
    Ok(vec![
        center_pole_block(&s, lambda, mu, xi)?,
        adapted_block(&s, "table3", w12.clone(), lambda, xi)?,
        transverse_block(&s, "table4", w12, (2, 3), lambda, mu, xi)?,
        adapted_block(&s, "table5", w34.clone(), mu, xi)?,
        transverse_block(&s, "table6", w34, (0, 1), mu, lambda, xi)?,
    ])
}
