use super::{cons_to_prim_2d, prim_to_cons_2d, Cons2D, FluidParams, ModelError, Prim2D};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    One,
    Two,
}

/// Uniform periodic mesh of the unit interval or the unit torus.
///
/// Cells are stored row-major: `index(i, j) = j * nx + i`, with `i` along `x`.
/// A 1D mesh has `ny = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mesh {
    dim: Dim,
    nx: usize,
    ny: usize,
}

impl Mesh {
    pub fn one_d(nx: usize) -> Result<Self, ModelError> {
        Self::build(Dim::One, nx, 1)
    }

    pub fn two_d(nx: usize, ny: usize) -> Result<Self, ModelError> {
        Self::build(Dim::Two, nx, ny)
    }

    fn build(dim: Dim, nx: usize, ny: usize) -> Result<Self, ModelError> {
        for (name, n) in [("N", nx), ("Ny", ny)] {
            if n == 0 {
                return Err(ModelError::InvalidParameter {
                    name,
                    value: 0.0,
                    reason: "mesh needs at least one cell per axis",
                });
            }
        }
        Ok(Self { dim, nx, ny })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        1.0 / self.ny as f64
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Cell centre `((i + 1/2)/nx, (j + 1/2)/ny)`. 1D meshes report `y = 1/2`.
    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        let x = (i as f64 + 0.5) / self.nx as f64;
        let y = (j as f64 + 0.5) / self.ny as f64;
        (x, y)
    }

    /// Cell area (or length in 1D).
    pub fn cell_volume(&self) -> f64 {
        match self.dim {
            Dim::One => self.dx(),
            Dim::Two => self.dx() * self.dy(),
        }
    }

    /// Centres in storage order.
    pub fn centers(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| self.center(i, j)))
    }
}

/// Conservative cell averages on a periodic mesh at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    pub mesh: Mesh,
    pub t: f64,
    pub cells: Vec<Cons2D>,
}

impl GridState {
    pub fn from_primitives(
        mesh: Mesh,
        t: f64,
        prims: &[Prim2D],
        params: &FluidParams,
    ) -> Result<Self, (usize, ModelError)> {
        assert_eq!(prims.len(), mesh.len(), "primitive array does not match mesh");
        let cells = prims
            .iter()
            .enumerate()
            .map(|(i, p)| prim_to_cons_2d(*p, params).map_err(|e| (i, e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { mesh, t, cells })
    }

    /// Primitive variables of every cell; the error carries the offending cell index.
    pub fn primitives(&self, params: &FluidParams) -> Result<Vec<Prim2D>, (usize, ModelError)> {
        self.cells.iter().enumerate().map(|(i, c)| cons_to_prim_2d(*c, params).map_err(|e| (i, e))).collect()
    }

    /// Discrete integral `Σ U_i · |cell|` of each conservative component.
    pub fn total(&self) -> Cons2D {
        let mut sum = Cons2D::ZERO;
        for c in &self.cells {
            sum += *c;
        }
        sum * self.mesh.cell_volume()
    }
}
