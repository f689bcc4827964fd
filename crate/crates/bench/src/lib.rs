//! Shared fixtures for the geometry benchmarks.

use opv::{enumerate_proj, FieldDescriptor, ProjPoint, SampleRng};

/// 100 seeded rational points of ℙ³ with no zero coordinates.
pub fn rational_p3_points() -> Vec<ProjPoint> {
    let mut rng = SampleRng::new(0);
    (0..100)
        .map(|_| rng.proj_point_all_charts(&FieldDescriptor::Rationals, 3))
        .collect()
}

/// Every point of ℙ²(𝔽_5).
pub fn p2_f5_points() -> Vec<ProjPoint> {
    let f5 = FieldDescriptor::prime_field(5).unwrap();
    enumerate_proj(&f5, 2).unwrap()
}
