use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::DecompStatus;
use crate::repmod::Rep;

/// Stable handle of an isomorphism class of indecomposables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IsoClassId(pub usize);

impl fmt::Display for IsoClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Cheap isomorphism invariants used to bucket registry lookups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    /// dim Hom(M, S_v)
    pub top: Vec<usize>,
    /// dim Hom(S_v, M)
    pub socle: Vec<usize>,
    pub radical_series: Vec<Vec<usize>>,
}

impl Fingerprint {
    pub fn of(m: &Rep) -> Fingerprint {
        Fingerprint {
            dims: m.dims().to_vec(),
            top: m.top_dims(),
            socle: m.socle_dims(),
            radical_series: m.radical_series(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub id: IsoClassId,
    pub rep: Rep,
    pub fingerprint: Fingerprint,
    pub projective: bool,
    pub status: DecompStatus,
    /// Ω of the representative, projective summands included.
    pub syzygy: Option<Vec<(IsoClassId, usize)>>,
}

/// Append-only table of pairwise non-isomorphic indecomposables.
#[derive(Clone, Debug, Default)]
pub struct IsoRegistry {
    entries: Vec<Entry>,
    index: HashMap<Fingerprint, Vec<IsoClassId>>,
}

impl IsoRegistry {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, id: IsoClassId) -> &Entry {
        &self.entries[id.0]
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub(crate) fn set_syzygy(&mut self, id: IsoClassId, syz: Vec<(IsoClassId, usize)>) {
        self.entries[id.0].syzygy = Some(syz);
    }

    pub fn bucket(&self, fp: &Fingerprint) -> Vec<IsoClassId> {
        self.index.get(fp).cloned().unwrap_or_default()
    }

    pub(crate) fn push(&mut self, rep: Rep, fingerprint: Fingerprint, projective: bool, status: DecompStatus) -> IsoClassId {
        let id = IsoClassId(self.entries.len());
        self.index.entry(fingerprint.clone()).or_default().push(id);
        self.entries.push(Entry { id, rep, fingerprint, projective, status, syzygy: None });
        id
    }

    /// JSON dump: one object per class.
    pub fn dump(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "id": e.id.0,
                        "dims": e.fingerprint.dims,
                        "fingerprint": e.fingerprint,
                        "projective": e.projective,
                        "syzygy": e.syzygy.as_ref().map(|s| s.iter().flat_map(|(i, m)| std::iter::repeat(i.0).take(*m)).collect::<Vec<_>>()),
                    })
                })
                .collect(),
        )
    }
}
