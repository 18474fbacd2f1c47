use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

/// Thread-safe insert-once map: the first stored value for a key wins and is
/// never replaced. Values are computed outside the lock.
#[derive(Debug, Default)]
pub struct InsertOnce<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> InsertOnce<K, V> {
    pub fn new() -> Self {
        InsertOnce {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, key: &K) -> Option<V> {
        self.map.read().expect("memo lock").get(key).cloned()
    }

    pub fn get_or_insert_with(&self, key: K, compute: impl FnOnce() -> V) -> V {
        if let Some(v) = self.get(&key) {
            return v;
        }
        let v = compute();
        self.map.write().expect("memo lock").entry(key).or_insert(v).clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Clone for InsertOnce<K, V> {
    fn clone(&self) -> Self {
        InsertOnce {
            map: RwLock::new(self.map.read().expect("memo lock").clone()),
        }
    }
}
