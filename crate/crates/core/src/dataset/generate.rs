//! Seeded synthetic point clouds, including the two-squares, two-circles and
//! Iris-like experiment presets.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::PointCloud;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent seed for sub-stream `stream` of `seed` (SplitMix64 finalizer).
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `n` points drawn uniformly over the area of the planar annulus
/// `r_inner <= |p| <= r_outer`.
pub fn generate_annulus<T: Scalar>(n: usize, r_inner: T, r_outer: T, seed: u64) -> Result<PointCloud<T>> {
    if !(r_inner >= T::zero() && r_inner < r_outer && r_outer.is_finite()) {
        return Err(Error::InvalidRadii {
            inner: r_inner.as_f64(),
            outer: r_outer.as_f64(),
        });
    }
    let (ri, ro) = (r_inner.as_f64(), r_outer.as_f64());
    let span = ro * ro - ri * ri;
    let mut rng = rng(seed);
    let mut coords = Vec::with_capacity(2 * n);
    while coords.len() < 2 * n {
        let u: f64 = rng.gen();
        let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        let r = (u * span + ri * ri).sqrt();
        let (x, y) = (T::lit(r * theta.cos()), T::lit(r * theta.sin()));
        // rounding can push a radius just past either bound; redraw those
        let norm = (x * x + y * y).sqrt();
        if norm >= r_inner && norm <= r_outer {
            coords.push(x);
            coords.push(y);
        }
    }
    if n == 0 {
        return Ok(PointCloud::empty(2));
    }
    PointCloud::from_flat(coords, 2)
}

/// `n` points uniform over the axis-aligned square with lower-left `corner` and edge `side`.
pub fn generate_square<T: Scalar>(n: usize, corner: [T; 2], side: T, seed: u64) -> Result<PointCloud<T>> {
    if !(side > T::zero() && side.is_finite()) {
        return Err(Error::InvalidSide(side.as_f64()));
    }
    let mut rng = rng(seed);
    let mut coords = Vec::with_capacity(2 * n);
    for _ in 0..n {
        for c in corner {
            let u = T::lit(rng.gen::<f64>());
            coords.push(c + u * side);
        }
    }
    if n == 0 {
        return Ok(PointCloud::empty(2));
    }
    PointCloud::from_flat(coords, 2)
}

fn labeled<T: Scalar>(cloud: PointCloud<T>, label: &str) -> Result<PointCloud<T>> {
    let n = cloud.len();
    cloud.with_labels(vec![label.to_string(); n])
}

/// 100 points in the unit square at the origin plus 100 in the unit square at (5, 5),
/// labeled `square-0` and `square-1`.
pub fn two_squares<T: Scalar>(seed: u64) -> Result<PointCloud<T>> {
    let a = generate_square(100, [T::zero(), T::zero()], T::one(), split_seed(seed, 0))?;
    let b = generate_square(100, [T::lit(5.0), T::lit(5.0)], T::one(), split_seed(seed, 1))?;
    labeled(a, "square-0")?.concat(&labeled(b, "square-1")?)
}

/// 500 points in the annulus 1 <= r <= 2 (`inner`) followed by 1000 in 5 <= r <= 10 (`outer`).
pub fn two_circles<T: Scalar>(seed: u64) -> Result<PointCloud<T>> {
    let inner = generate_annulus(500, T::one(), T::lit(2.0), split_seed(seed, 0))?;
    let outer = generate_annulus(1000, T::lit(5.0), T::lit(10.0), split_seed(seed, 1))?;
    labeled(inner, "inner")?.concat(&labeled(outer, "outer")?)
}

/// Per-class (mean, standard deviation) of the Iris-like generator: sepal length, sepal
/// width, petal length, petal width.
const IRIS_LIKE_CLASSES: [(&str, [f64; 4], [f64; 4]); 3] = [
    ("setosa", [5.006, 3.428, 1.462, 0.246], [0.35, 0.38, 0.17, 0.10]),
    ("versicolor", [5.936, 2.770, 4.260, 1.326], [0.50, 0.31, 0.47, 0.20]),
    ("virginica", [6.588, 2.974, 5.552, 2.026], [0.50, 0.32, 0.50, 0.27]),
];

/// Mahalanobis radius beyond which Iris-like draws are rejected. Real measurements are
/// bounded; untruncated Gaussian tails leave isolated points that fragment fine covers.
const IRIS_LIKE_RADIUS: f64 = 2.0;

/// Synthetic stand-in for the Iris table: 50 samples per class in 4 dimensions.
///
/// The class means follow the real species means; the first class sits more than six
/// within-class standard deviations from the other two, which overlap each other.
pub fn iris_like<T: Scalar>(seed: u64) -> Result<PointCloud<T>> {
    iris_like_sized(50, seed)
}

/// [`iris_like`] with `per_class` samples per class. Each class is an axis-aligned
/// Gaussian conditioned on Mahalanobis radius at most 2.
pub fn iris_like_sized<T: Scalar>(per_class: usize, seed: u64) -> Result<PointCloud<T>> {
    if per_class == 0 {
        return Err(crate::error::invalid("per_class", "must be >= 1"));
    }
    let mut coords = Vec::with_capacity(3 * per_class * 4);
    let mut labels = Vec::with_capacity(3 * per_class);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    for (c, (name, mean, sd)) in IRIS_LIKE_CLASSES.iter().enumerate() {
        let mut rng = rng(split_seed(seed, c as u64));
        let mut kept = 0;
        while kept < per_class {
            let z: [f64; 4] = std::array::from_fn(|_| normal.sample(&mut rng));
            if z.iter().map(|v| v * v).sum::<f64>() > IRIS_LIKE_RADIUS * IRIS_LIKE_RADIUS {
                continue;
            }
            coords.extend((0..4).map(|j| T::lit(mean[j] + sd[j] * z[j])));
            labels.push(name.to_string());
            kept += 1;
        }
    }
    PointCloud::from_flat(coords, 4)?.with_labels(labels)
}

/// Named experiment datasets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    TwoSquares,
    TwoCircles,
    IrisLike,
}

impl Preset {
    pub fn generate<T: Scalar>(self, seed: u64) -> Result<PointCloud<T>> {
        match self {
            Preset::TwoSquares => two_squares(seed),
            Preset::TwoCircles => two_circles(seed),
            Preset::IrisLike => iris_like(seed),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::TwoSquares => "two-squares",
            Preset::TwoCircles => "two-circles",
            Preset::IrisLike => "iris-like",
        })
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-squares" => Ok(Preset::TwoSquares),
            "two-circles" => Ok(Preset::TwoCircles),
            "iris-like" => Ok(Preset::IrisLike),
            other => Err(crate::error::invalid(
                "preset",
                format!("unknown preset `{other}` (two-squares, two-circles, iris-like)"),
            )),
        }
    }
}

/// Uniform sample of `m` rows without replacement, returned in their original order.
/// Returns the whole cloud when `m >= n`.
pub fn sample_rows<T: Scalar>(cloud: &PointCloud<T>, m: usize, seed: u64) -> (PointCloud<T>, Vec<usize>) {
    let n = cloud.len();
    if m >= n {
        return (cloud.clone(), (0..n).collect());
    }
    let mut picked = index::sample(&mut rng(seed), n, m).into_vec();
    picked.sort_unstable();
    (cloud.select(&picked), picked)
}
