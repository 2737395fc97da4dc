//! Floating-point scalar abstraction for feature values and the classifier.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// f32 or f64.
pub trait Real: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static {
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    fn from_value(v: u32) -> Self {
        Self::from_u32(v).expect("filtration value representable as float")
    }
}

impl Real for f32 {}
impl Real for f64 {}
