use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Abs,
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
}

impl UnaryOp {
    /// Function-call spelling; `None` for negation, which is prefix syntax.
    pub fn name(self) -> Option<&'static str> {
        match self {
            UnaryOp::Neg => None,
            UnaryOp::Abs => Some("abs"),
            UnaryOp::Sqrt => Some("sqrt"),
            UnaryOp::Exp => Some("exp"),
            UnaryOp::Log => Some("log"),
            UnaryOp::Sin => Some("sin"),
            UnaryOp::Cos => Some("cos"),
        }
    }

    pub fn from_name(name: &str) -> Option<UnaryOp> {
        Some(match name {
            "abs" => UnaryOp::Abs,
            "sqrt" => UnaryOp::Sqrt,
            "exp" => UnaryOp::Exp,
            "log" => UnaryOp::Log,
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

/// A node of the expression tree. Children are owned, so trees are finite
/// and acyclic by construction.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Constant(f64),
    Variable,
    Unary(UnaryOp, Box<Node>),
    Binary(BinaryOp, Box<Node>, Box<Node>),
}

impl Node {
    pub fn unary(op: UnaryOp, child: Node) -> Node {
        Node::Unary(op, Box::new(child))
    }

    pub fn binary(op: BinaryOp, left: Node, right: Node) -> Node {
        Node::Binary(op, Box::new(left), Box::new(right))
    }

    /// Number of nodes in the subtree.
    pub fn size(&self) -> usize {
        match self {
            Node::Constant(_) | Node::Variable => 1,
            Node::Unary(_, c) => 1 + c.size(),
            Node::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }
}

/// Canonical text: every compound node is parenthesized so that re-parsing
/// yields the same tree regardless of precedence rules. Constants use the
/// shortest round-trip decimal form.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Constant(c) if *c < 0.0 => write!(f, "(-{:?})", -c),
            Node::Constant(c) => write!(f, "{c:?}"),
            Node::Variable => f.write_str("x"),
            Node::Unary(UnaryOp::Neg, c) => write!(f, "(-{c})"),
            Node::Unary(op, c) => write!(f, "{}({c})", op.name().unwrap_or("?")),
            Node::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

/// A parsed univariate expression in the single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    root: Node,
}

impl Expression {
    pub fn new(root: Node) -> Self {
        Self { root }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn into_root(self) -> Node {
        self.root
    }

    /// Canonical text form, accepted by [`crate::exprlang::parse`].
    pub fn canonical(&self) -> String {
        self.root.to_string()
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}
