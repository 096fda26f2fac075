//! Order-maintenance list: insert-before and rank in expected O(log n).
//!
//! Backed by a treap over implicit positions with parent links, so a node
//! handle stays valid across insertions and its rank is found by walking up.

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Node {
    left: u32,
    right: u32,
    parent: u32,
    size: u32,
    prio: u64,
}

/// Handle to an element of an [`OrderList`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Handle(u32);

impl Handle {
    /// Allocation order of the element; the end marker is 0.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct OrderList {
    nodes: Vec<Node>,
    root: u32,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl Default for OrderList {
    fn default() -> Self {
        Self::new()
    }
}

impl OrderList {
    /// Creates a list holding only the end marker.
    pub fn new() -> Self {
        let mut list = OrderList {
            nodes: Vec::new(),
            root: NIL,
        };
        list.root = list.alloc();
        list
    }

    /// The end marker; it always has the largest rank.
    pub fn end(&self) -> Handle {
        Handle(0)
    }

    /// Number of elements, end marker included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn alloc(&mut self) -> u32 {
        let id = self.nodes.len() as u32;
        self.nodes.push(Node {
            left: NIL,
            right: NIL,
            parent: NIL,
            size: 1,
            prio: splitmix(id as u64),
        });
        id
    }

    fn size(&self, x: u32) -> u32 {
        if x == NIL {
            0
        } else {
            self.nodes[x as usize].size
        }
    }

    fn pull(&mut self, x: u32) {
        let n = self.nodes[x as usize];
        self.nodes[x as usize].size = 1 + self.size(n.left) + self.size(n.right);
    }

    /// Inserts a new element immediately before `target`.
    pub fn insert_before(&mut self, target: Handle) -> Handle {
        let z = self.alloc();
        let t = target.0;
        let (parent, as_left) = if self.nodes[t as usize].left == NIL {
            (t, true)
        } else {
            let mut p = self.nodes[t as usize].left;
            while self.nodes[p as usize].right != NIL {
                p = self.nodes[p as usize].right;
            }
            (p, false)
        };
        if as_left {
            self.nodes[parent as usize].left = z;
        } else {
            self.nodes[parent as usize].right = z;
        }
        self.nodes[z as usize].parent = parent;
        let mut a = parent;
        while a != NIL {
            self.nodes[a as usize].size += 1;
            a = self.nodes[a as usize].parent;
        }
        while self.nodes[z as usize].parent != NIL {
            let p = self.nodes[z as usize].parent;
            if self.nodes[p as usize].prio >= self.nodes[z as usize].prio {
                break;
            }
            self.rotate_up(z);
        }
        Handle(z)
    }

    fn rotate_up(&mut self, x: u32) {
        let p = self.nodes[x as usize].parent;
        let g = self.nodes[p as usize].parent;
        if self.nodes[p as usize].left == x {
            let mid = self.nodes[x as usize].right;
            self.nodes[p as usize].left = mid;
            if mid != NIL {
                self.nodes[mid as usize].parent = p;
            }
            self.nodes[x as usize].right = p;
        } else {
            let mid = self.nodes[x as usize].left;
            self.nodes[p as usize].right = mid;
            if mid != NIL {
                self.nodes[mid as usize].parent = p;
            }
            self.nodes[x as usize].left = p;
        }
        self.nodes[p as usize].parent = x;
        self.nodes[x as usize].parent = g;
        if g == NIL {
            self.root = x;
        } else if self.nodes[g as usize].left == p {
            self.nodes[g as usize].left = x;
        } else {
            self.nodes[g as usize].right = x;
        }
        self.pull(p);
        self.pull(x);
    }

    /// Zero-based position of `h` in the list.
    pub fn rank(&self, h: Handle) -> usize {
        let mut x = h.0;
        let mut r = self.size(self.nodes[x as usize].left) as usize;
        while self.nodes[x as usize].parent != NIL {
            let p = self.nodes[x as usize].parent;
            if self.nodes[p as usize].right == x {
                r += self.size(self.nodes[p as usize].left) as usize + 1;
            }
            x = p;
        }
        r
    }

    /// Handles in list order, end marker last.
    pub fn iter(&self) -> Vec<Handle> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = Vec::new();
        let mut x = self.root;
        while x != NIL || !stack.is_empty() {
            while x != NIL {
                stack.push(x);
                x = self.nodes[x as usize].left;
            }
            let y = stack.pop().expect("non-empty");
            out.push(Handle(y));
            x = self.nodes[y as usize].right;
        }
        out
    }
}
