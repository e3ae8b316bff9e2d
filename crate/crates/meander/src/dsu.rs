/// Union-find with union by size and an undo log, so backtracking searches can roll back merges.
#[derive(Clone, Debug)]
pub struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<Option<(usize, usize)>>,
    components: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), size: vec![1; n], log: Vec::new(), components: n }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.log.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        self.log.push(Some((ra, rb)));
        true
    }

    /// Reverts the most recent `union` call.
    pub fn undo(&mut self) {
        if let Some(Some((ra, rb))) = self.log.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
            self.components += 1;
        }
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Dense class labels `0..components` in order of first appearance.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out.push(label[r]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undo_restores_components() {
        let mut d = Dsu::new(4);
        assert!(d.union(0, 1));
        assert!(d.union(2, 3));
        assert!(!d.union(1, 0));
        assert_eq!(d.components(), 2);
        d.undo();
        d.undo();
        assert_eq!(d.components(), 3);
        assert!(d.same(0, 1));
        assert!(!d.same(2, 3));
        assert_eq!(d.labels(), vec![0, 0, 1, 2]);
    }
}
