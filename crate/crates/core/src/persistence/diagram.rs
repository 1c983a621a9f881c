use std::io::Write;

use crate::error::Result;
use crate::rips::Filtration;
use crate::scalar::{cmp, Scalar};

use super::{boundary_matrix, reduce, Reduction};

/// One homology class: born at `birth`, dying at `death` (`+inf` for essential classes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair<T> {
    pub dimension: usize,
    pub birth: T,
    pub death: T,
    /// Filtration position of the creating simplex.
    pub birth_index: usize,
    /// Filtration position of the killing simplex, if any.
    pub death_index: Option<usize>,
}

impl<T: Scalar> PersistencePair<T> {
    pub fn is_infinite(&self) -> bool {
        self.death.is_infinite()
    }

    /// Zero-length pair: created and killed at the same threshold.
    pub fn is_ephemeral(&self) -> bool {
        self.death == self.birth
    }

    pub fn persistence(&self) -> T {
        self.death - self.birth
    }

    pub fn alive_at(&self, eps: T) -> bool {
        self.birth <= eps && eps < self.death
    }
}

/// Which pairs exports and barcodes show.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReportOptions {
    pub include_ephemeral: bool,
    /// Also show the top dimension, whose classes cannot die inside the truncated complex.
    pub all_dims: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram<T> {
    /// Sorted by dimension, birth, death, then birth position.
    pub pairs: Vec<PersistencePair<T>>,
    pub max_dim: usize,
    pub n_points: usize,
}

impl<T: Scalar> PersistenceDiagram<T> {
    /// Pairs in the top dimension are unreliable: killing them would need simplices one
    /// dimension higher than the filtration holds.
    pub fn is_reliable(&self, pair: &PersistencePair<T>) -> bool {
        pair.dimension < self.max_dim
    }

    pub fn in_dimension(&self, dim: usize) -> impl Iterator<Item = &PersistencePair<T>> + '_ {
        self.pairs.iter().filter(move |p| p.dimension == dim)
    }

    pub fn reported(&self, opts: ReportOptions) -> impl Iterator<Item = &PersistencePair<T>> + '_ {
        self.pairs
            .iter()
            .filter(move |p| (opts.include_ephemeral || !p.is_ephemeral()) && (opts.all_dims || self.is_reliable(p)))
    }

    /// Highest dimension shown under `opts`, if any.
    fn reported_top(&self, opts: ReportOptions) -> Option<usize> {
        if opts.all_dims {
            Some(self.max_dim)
        } else {
            self.max_dim.checked_sub(1)
        }
    }
}

/// Reads the diagram off a reduction of `filtration`'s boundary matrix.
pub fn persistence_diagram<T: Scalar>(reduction: &Reduction, filtration: &Filtration<T>) -> PersistenceDiagram<T> {
    let f = filtration;
    let mut pairs: Vec<PersistencePair<T>> = reduction
        .pairs
        .iter()
        .map(|&(b, d)| PersistencePair {
            dimension: f.dimension(b),
            birth: f.birth(b),
            death: f.birth(d),
            birth_index: b,
            death_index: Some(d),
        })
        .chain(reduction.essential.iter().map(|&b| PersistencePair {
            dimension: f.dimension(b),
            birth: f.birth(b),
            death: T::infinity(),
            birth_index: b,
            death_index: None,
        }))
        .collect();
    pairs.sort_by(|a, b| {
        a.dimension
            .cmp(&b.dimension)
            .then(cmp(&a.birth, &b.birth))
            .then(cmp(&a.death, &b.death))
            .then(a.birth_index.cmp(&b.birth_index))
    });
    PersistenceDiagram {
        pairs,
        max_dim: filtration.max_dim,
        n_points: filtration.n_points,
    }
}

/// Boundary matrix, twist reduction and diagram in one call.
pub fn compute_persistence<T: Scalar>(filtration: &Filtration<T>) -> Result<PersistenceDiagram<T>> {
    let matrix = boundary_matrix(filtration)?;
    Ok(persistence_diagram(&reduce(&matrix), filtration))
}

/// Betti numbers `0..=max_dim` at threshold `eps`: classes with `birth <= eps < death`.
pub fn betti_numbers<T: Scalar>(diagram: &PersistenceDiagram<T>, eps: T) -> Vec<usize> {
    let mut betti = vec![0; diagram.max_dim + 1];
    for p in diagram.pairs.iter().filter(|p| p.alive_at(eps)) {
        betti[p.dimension] += 1;
    }
    betti
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bar<T> {
    pub dimension: usize,
    /// Rank within its dimension, 0 at the top.
    pub order: usize,
    pub birth: T,
    pub death: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Barcode<T> {
    pub bars: Vec<Bar<T>>,
    /// Where infinite bars end when drawn: 1.05 times the largest finite death.
    pub render_cap: T,
}

impl<T: Scalar> Barcode<T> {
    pub fn render_death(&self, bar: &Bar<T>) -> T {
        if bar.death.is_infinite() {
            self.render_cap
        } else {
            bar.death
        }
    }
}

/// Bars per dimension, earliest birth on top and longer bars first among equal births.
pub fn barcode<T: Scalar>(diagram: &PersistenceDiagram<T>, opts: ReportOptions) -> Barcode<T> {
    let mut shown: Vec<&PersistencePair<T>> = diagram.reported(opts).collect();
    shown.sort_by(|a, b| {
        a.dimension
            .cmp(&b.dimension)
            .then(cmp(&a.birth, &b.birth))
            .then(cmp(&b.death, &a.death))
    });
    let mut bars = Vec::with_capacity(shown.len());
    let mut order = 0;
    for (i, p) in shown.iter().enumerate() {
        if i > 0 && shown[i - 1].dimension != p.dimension {
            order = 0;
        }
        bars.push(Bar {
            dimension: p.dimension,
            order,
            birth: p.birth,
            death: p.death,
        });
        order += 1;
    }
    let max_finite = shown
        .iter()
        .map(|p| p.death)
        .filter(|d| d.is_finite())
        .fold(None, |acc: Option<T>, d| Some(acc.map_or(d, |a| a.max(d))));
    let base = max_finite.unwrap_or_else(|| shown.iter().map(|p| p.birth).fold(T::zero(), T::max));
    let render_cap = if base > T::zero() {
        base * T::lit(1.05)
    } else {
        T::one()
    };
    Barcode { bars, render_cap }
}

/// `dimension,birth,death` rows; infinite deaths are written as `inf`.
pub fn write_diagram_csv<T: Scalar, W: Write>(
    diagram: &PersistenceDiagram<T>,
    opts: ReportOptions,
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["dimension", "birth", "death"])?;
    for p in diagram.reported(opts) {
        w.write_record([p.dimension.to_string(), p.birth.to_string(), fmt_death(p.death)])?;
    }
    w.flush()?;
    Ok(())
}

/// `dimension,order,birth,death` rows in barcode order.
pub fn write_barcode_csv<T: Scalar, W: Write>(barcode: &Barcode<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["dimension", "order", "birth", "death"])?;
    for b in &barcode.bars {
        w.write_record([
            b.dimension.to_string(),
            b.order.to_string(),
            b.birth.to_string(),
            fmt_death(b.death),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Betti curves sampled at `samples` evenly spaced thresholds over `[0, max_eps]`:
/// `eps,beta_0,...` with one column per reported dimension.
pub fn write_betti_csv<T: Scalar, W: Write>(
    diagram: &PersistenceDiagram<T>,
    max_eps: T,
    samples: usize,
    opts: ReportOptions,
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let top = diagram.reported_top(opts);
    let dims = top.map_or(0, |t| t + 1);
    let mut header = vec!["eps".to_string()];
    header.extend((0..dims).map(|d| format!("beta_{d}")));
    w.write_record(&header)?;
    for i in 0..samples {
        let eps = if samples > 1 {
            max_eps * T::from_count(i) / T::from_count(samples - 1)
        } else {
            T::zero()
        };
        let betti = betti_numbers(diagram, eps);
        let mut row = vec![eps.to_string()];
        row.extend(betti[..dims].iter().map(ToString::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn fmt_death<T: Scalar>(death: T) -> String {
    if death.is_infinite() {
        "inf".to_string()
    } else {
        death.to_string()
    }
}
