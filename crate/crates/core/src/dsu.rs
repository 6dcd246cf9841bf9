/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets { parent: (0..len as u32).collect(), size: vec![1; len] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] as usize != i {
            let grand = self.parent[self.parent[i] as usize];
            self.parent[i] = grand;
            i = grand as usize;
        }
        i
    }

    /// Merges the sets of `i` and `j`; returns the size of the merged set.
    pub fn union(&mut self, i: usize, j: usize) -> usize {
        let (mut a, mut b) = (self.find(i), self.find(j));
        if a != b {
            if self.size[a] < self.size[b] {
                std::mem::swap(&mut a, &mut b);
            }
            self.parent[b] = a as u32;
            self.size[a] += self.size[b];
        }
        self.size[a] as usize
    }

    pub fn set_size(&mut self, i: usize) -> usize {
        let r = self.find(i);
        self.size[r] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unions_merge_sizes() {
        let mut d = DisjointSets::new(6);
        assert_eq!(d.union(0, 1), 2);
        assert_eq!(d.union(2, 3), 2);
        assert_eq!(d.union(1, 3), 4);
        assert_eq!(d.union(0, 2), 4);
        assert_eq!(d.find(0), d.find(3));
        assert_ne!(d.find(0), d.find(4));
        assert_eq!(d.set_size(5), 1);
    }
}
