use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// Encoding of a generator: a finite term built from integers, strings and
/// sequences.
///
/// The derived order (integers before strings before sequences, sequences
/// lexicographic) is total and independent of the run, so bases and
/// matrices come out in a reproducible order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Key {
    Int(i64),
    Str(Arc<str>),
    Seq(Arc<[Key]>),
}

impl Key {
    pub fn int(v: impl TryInto<i64>) -> Key {
        Key::Int(v.try_into().ok().expect("key integer out of range"))
    }

    pub fn str(s: &str) -> Key {
        Key::Str(Arc::from(s))
    }

    pub fn seq(items: Vec<Key>) -> Key {
        Key::Seq(Arc::from(items))
    }

    pub fn ints<T: Copy + TryInto<i64>>(items: &[T]) -> Key {
        Key::seq(items.iter().map(|&x| Key::int(x)).collect())
    }

    pub fn as_int(&self) -> i64 {
        match self {
            Key::Int(v) => *v,
            other => panic!("expected integer key, found {other}"),
        }
    }

    pub fn as_usize(&self) -> usize {
        usize::try_from(self.as_int()).expect("expected nonnegative key")
    }

    pub fn as_seq(&self) -> &[Key] {
        match self {
            Key::Seq(v) => v,
            other => panic!("expected sequence key, found {other}"),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            Key::Str(s) => s,
            other => panic!("expected string key, found {other}"),
        }
    }

    /// Decodes a sequence of nonnegative integers.
    pub fn as_usizes(&self) -> Vec<usize> {
        self.as_seq().iter().map(Key::as_usize).collect()
    }

    pub fn get(&self, i: usize) -> &Key {
        &self.as_seq()[i]
    }

    /// Compact JSON text of the key.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("keys serialize")
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Int(v) => write!(f, "{v}"),
            Key::Str(s) => write!(f, "{s}"),
            Key::Seq(items) => {
                write!(f, "[")?;
                for (i, k) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Key {
    fn from(v: i64) -> Key {
        Key::Int(v)
    }
}

impl From<&str> for Key {
    fn from(s: &str) -> Key {
        Key::str(s)
    }
}
