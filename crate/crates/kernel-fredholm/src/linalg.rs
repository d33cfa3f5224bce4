use contour_quad::Real;
use nalgebra::DMatrix;
use num_complex::Complex;

/// Dense linear algebra the kernels need, backed by nalgebra per concrete type.
pub trait LinalgScalar: Real {
    /// Determinant via LU with partial pivoting.
    fn complex_det(m: DMatrix<Complex<Self>>) -> Complex<Self>;
    /// Eigenvalues of a real symmetric matrix, unordered.
    fn sym_eigenvalues(m: DMatrix<Self>) -> Vec<Self>;
}

macro_rules! impl_linalg {
    ($t:ty) => {
        impl LinalgScalar for $t {
            fn complex_det(m: DMatrix<Complex<$t>>) -> Complex<$t> {
                if m.nrows() == 0 {
                    return Complex::new(1.0, 0.0);
                }
                m.lu().determinant()
            }

            fn sym_eigenvalues(m: DMatrix<$t>) -> Vec<$t> {
                if m.nrows() == 0 {
                    return Vec::new();
                }
                m.symmetric_eigenvalues().iter().copied().collect()
            }
        }
    };
}

impl_linalg!(f32);
impl_linalg!(f64);
