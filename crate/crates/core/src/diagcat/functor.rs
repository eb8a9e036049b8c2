use std::sync::Arc;

use super::{FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// A functor between finite categories, given on objects and morphisms.
#[derive(Clone, Debug)]
pub struct Functor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<ObjId>,
    morphisms: Vec<MorId>,
}

impl Functor {
    /// Checks endpoints, identities and composites exhaustively.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<ObjId>,
        morphisms: Vec<MorId>,
    ) -> Result<Self> {
        if objects.len() != source.n_objects() || morphisms.len() != source.n_morphisms() {
            return Err(Error::Dimension("functor data does not match its source".into()));
        }
        let (s, t) = (&source, &target);
        for f in 0..s.n_morphisms() {
            let pf = morphisms[f];
            if pf >= t.n_morphisms() || t.dom(pf) != objects[s.dom(f)] || t.cod(pf) != objects[s.cod(f)] {
                return Err(Error::audit("functor", format!("{} lands on the wrong endpoints", s.name(f))));
            }
            if s.is_identity(f) && !t.is_identity(pf) {
                return Err(Error::audit("functor", format!("{} is not sent to an identity", s.name(f))));
            }
            for g in (0..s.n_morphisms()).filter(|&g| s.dom(g) == s.cod(f)) {
                let gf = s.compose(g, f).expect("composable");
                if t.compose(morphisms[g], pf) != Some(morphisms[gf]) {
                    return Err(Error::audit("functor", format!("{} ∘ {} is not preserved", s.name(g), s.name(f))));
                }
            }
        }
        Ok(Functor { source, target, objects, morphisms })
    }

    pub fn identity(cat: &Arc<FiniteCategory>) -> Self {
        Functor {
            source: cat.clone(),
            target: cat.clone(),
            objects: (0..cat.n_objects()).collect(),
            morphisms: (0..cat.n_morphisms()).collect(),
        }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(cat: &Arc<FiniteCategory>) -> Self {
        Functor {
            source: cat.clone(),
            target: Arc::new(FiniteCategory::terminal()),
            objects: vec![0; cat.n_objects()],
            morphisms: vec![0; cat.n_morphisms()],
        }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn object(&self, i: ObjId) -> ObjId {
        self.objects[i]
    }

    pub fn morphism(&self, f: MorId) -> MorId {
        self.morphisms[f]
    }
}
