//! Finite graphs given by a window, used as test doubles. They carry no
//! separation oracle, so regions over them use budgeted search.

use crate::error::{Error, Result};
use crate::graph::{Family, VertexId};
use crate::window::Window;

pub struct WindowFamily {
    window: Window,
    root: VertexId,
}

impl WindowFamily {
    pub fn new(window: Window, root: VertexId) -> Self {
        WindowFamily { window, root }
    }
}

impl Family for WindowFamily {
    fn root(&self) -> VertexId {
        self.root.clone()
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let i = self
            .window
            .index_of(v)
            .ok_or_else(|| Error::address(v.as_str(), "finite"))?;
        Ok(self
            .window
            .neighbors(i)
            .iter()
            .map(|&j| self.window.vertex(j).clone())
            .collect())
    }
}
