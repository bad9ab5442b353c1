use super::expression::{Issue, Resolver};
use super::lexer::{tokenize, TokenKind};
use super::sexpr::{self, Node};
use super::{ParseDiagnostic, ParsedOntology};
use crate::error::ParseError;
use crate::iri::{Iri, RDF, XSD};
use crate::model::{Axiom, EntityKind, Literal, Ontology};

const UNSUPPORTED_AXIOMS: &[&str] = &[
    "DisjointClasses",
    "DisjointUnion",
    "EquivalentObjectProperties",
    "DisjointObjectProperties",
    "InverseObjectProperties",
    "ObjectPropertyDomain",
    "ObjectPropertyRange",
    "FunctionalObjectProperty",
    "InverseFunctionalObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "TransitiveObjectProperty",
    "SubDataPropertyOf",
    "EquivalentDataProperties",
    "DisjointDataProperties",
    "DataPropertyDomain",
    "DataPropertyRange",
    "FunctionalDataProperty",
    "DatatypeDefinition",
    "HasKey",
    "SameIndividual",
    "DifferentIndividuals",
    "NegativeObjectPropertyAssertion",
    "DataPropertyAssertion",
    "NegativeDataPropertyAssertion",
    "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain",
    "AnnotationPropertyRange",
    "DLSafeRule",
];

pub(crate) fn read_document(text: &str) -> Result<ParsedOntology, ParseError> {
    let mut reader = Reader {
        resolver: Resolver::new(text),
        warnings: Vec::new(),
    };
    match reader.document() {
        Ok(ontology) => Ok(ParsedOntology {
            ontology,
            warnings: reader.warnings,
        }),
        Err(diag) => {
            let mut diagnostics = reader.warnings;
            diagnostics.push(diag);
            Err(ParseError { diagnostics })
        }
    }
}

struct Reader<'a> {
    resolver: Resolver<'a>,
    warnings: Vec<ParseDiagnostic>,
}

impl Reader<'_> {
    fn text(&self) -> &str {
        self.resolver.text
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic::error(self.text(), offset, message)
    }

    fn warn(&mut self, offset: usize, message: impl Into<String>) {
        let w = ParseDiagnostic::warning(self.text(), offset, message);
        self.warnings.push(w);
    }

    fn document(&mut self) -> Result<Ontology, ParseDiagnostic> {
        let tokens = tokenize(self.text())?;
        let nodes = sexpr::build(self.text(), tokens)?;
        let mut prefixes = Vec::new();
        let mut ontology_node = None;
        for node in &nodes {
            let Node::List {
                head,
                head_span,
                args,
                ..
            } = node
            else {
                unreachable!("top-level atoms are rejected while building the tree");
            };
            match head.as_str() {
                "Prefix" if ontology_node.is_none() => {
                    let (name, ns) = self.prefix_declaration(head_span.start, args)?;
                    self.resolver.prefixes.insert(name.clone(), ns.clone());
                    prefixes.push((name, ns));
                }
                "Prefix" => {
                    return Err(
                        self.error(head_span.start, "Prefix declarations must precede Ontology")
                    )
                }
                "Ontology" if ontology_node.is_none() => {
                    ontology_node = Some((head_span.start, args))
                }
                "Ontology" => {
                    return Err(self.error(head_span.start, "more than one Ontology in document"))
                }
                other => {
                    return Err(self.error(
                        head_span.start,
                        format!("unexpected {other} at document level"),
                    ))
                }
            }
        }
        let Some((_, args)) = ontology_node else {
            return Err(self.error(self.text().len(), "missing Ontology(...)"));
        };
        let mut onto = Ontology::new();
        for (name, ns) in prefixes {
            onto.add_prefix(name, ns);
        }
        let mut rest = args.as_slice();
        let mut header_iris = 0;
        while let [Node::Atom(tok), tail @ ..] = rest {
            if header_iris == 2 {
                return Err(self.error(tok.span.start, "unexpected token in ontology header"));
            }
            let iri = self.resolve(self.resolver.token_iri(tok))?;
            if header_iris == 0 {
                onto.set_iri(Some(iri));
            }
            header_iris += 1;
            rest = tail;
        }
        for node in rest {
            self.axiom(node, &mut onto)?;
        }
        Ok(onto)
    }

    fn prefix_declaration(
        &self,
        at: usize,
        args: &[Node],
    ) -> Result<(String, String), ParseDiagnostic> {
        if let [Node::Atom(name), Node::Atom(eq), Node::Atom(ns)] = args {
            if let (
                TokenKind::PrefixedName { prefix, local },
                TokenKind::Equals,
                TokenKind::FullIri(ns),
            ) = (&name.kind, &eq.kind, &ns.kind)
            {
                if local.is_empty() {
                    return Ok((prefix.clone(), ns.clone()));
                }
            }
        }
        Err(self.error(
            at,
            "malformed Prefix declaration, expected Prefix(name:=<iri>)",
        ))
    }

    /// Turns an unsupported-construct issue into `Ok(None)` plus a warning.
    fn resolve<T>(&self, r: Result<T, Issue>) -> Result<T, ParseDiagnostic> {
        r.map_err(|issue| match issue {
            Issue::Fatal(d) => d,
            Issue::Unsupported { offset, message } => self.error(offset, message),
        })
    }

    fn axiom(&mut self, node: &Node, onto: &mut Ontology) -> Result<(), ParseDiagnostic> {
        let Node::List {
            head,
            head_span,
            args,
            ..
        } = node
        else {
            return Err(self.error(node.span().start, "expected an axiom"));
        };
        let at = head_span.start;
        // leading axiom annotations
        let mut args = args.as_slice();
        let mut dropped_annotations = false;
        while let [Node::List { head: h, .. }, tail @ ..] = args {
            if h != "Annotation" {
                break;
            }
            dropped_annotations = true;
            args = tail;
        }
        match self.axiom_body(head, at, args, onto) {
            Ok(()) => {
                if dropped_annotations && head != "Import" && head != "Annotation" {
                    self.warn(at, format!("annotations on {head} axiom dropped"));
                }
                Ok(())
            }
            Err(Issue::Fatal(d)) => Err(d),
            Err(Issue::Unsupported { offset, message }) => {
                self.warn(offset, format!("{message}; {head} axiom skipped"));
                Ok(())
            }
        }
    }

    fn axiom_body(
        &mut self,
        head: &str,
        at: usize,
        args: &[Node],
        onto: &mut Ontology,
    ) -> Result<(), Issue> {
        let r = &self.resolver;
        let arity = |n: usize, exact: bool| -> Result<(), Issue> {
            if (exact && args.len() != n) || args.len() < n {
                Err(r.fatal(
                    at,
                    format!(
                        "{head} expects {}{n} arguments, got {}",
                        if exact { "" } else { "at least " },
                        args.len()
                    ),
                ))
            } else {
                Ok(())
            }
        };
        let add = |onto: &mut Ontology, ax: Axiom| -> Result<(), Issue> {
            onto.add_axiom(ax)
                .map(|_| ())
                .map_err(|e| r.fatal(at, e.to_string()))
        };
        match head {
            "Import" => Err(Issue::Unsupported {
                offset: at,
                message: "imports are not followed".into(),
            }),
            "Annotation" => Err(Issue::Unsupported {
                offset: at,
                message: "ontology annotations are not retained".into(),
            }),
            "Declaration" => {
                arity(1, true)?;
                let Node::List {
                    head: kind,
                    head_span,
                    args: inner,
                    ..
                } = &args[0]
                else {
                    return Err(r.fatal(at, "Declaration expects an entity such as Class(...)"));
                };
                let kind = match kind.as_str() {
                    "Class" => EntityKind::Class,
                    "ObjectProperty" => EntityKind::ObjectProperty,
                    "NamedIndividual" => EntityKind::NamedIndividual,
                    "AnnotationProperty" => EntityKind::AnnotationProperty,
                    "DataProperty" | "Datatype" => {
                        return Err(Issue::Unsupported {
                            offset: head_span.start,
                            message: format!("{kind} declarations are not supported"),
                        })
                    }
                    other => {
                        return Err(r.fatal(head_span.start, format!("unknown entity type {other}")))
                    }
                };
                let [entity] = inner.as_slice() else {
                    return Err(r.fatal(
                        head_span.start,
                        "entity declaration expects exactly one IRI",
                    ));
                };
                let iri = r.node_iri(entity)?;
                onto.declare(kind, iri);
                Ok(())
            }
            "SubClassOf" => {
                arity(2, true)?;
                let sub = r.class_expression(&args[0])?.to_expression();
                let sup = r.class_expression(&args[1])?.to_expression();
                add(onto, Axiom::SubClassOf(sub, sup))
            }
            "EquivalentClasses" => {
                arity(2, false)?;
                let members = args
                    .iter()
                    .map(|a| r.class_expression(a).map(|t| t.to_expression()))
                    .collect::<Result<Vec<_>, _>>()?;
                add(onto, Axiom::EquivalentClasses(members))
            }
            "SubObjectPropertyOf" => {
                arity(2, true)?;
                let sup = r.object_property(&args[1])?;
                match &args[0] {
                    Node::List {
                        head: h,
                        head_span,
                        args: chain,
                        ..
                    } if h == "ObjectPropertyChain" => {
                        if chain.len() != 2 {
                            return Err(Issue::Unsupported {
                                offset: head_span.start,
                                message: format!(
                                    "property chains of length {} are not supported",
                                    chain.len()
                                ),
                            });
                        }
                        let r1 = r.object_property(&chain[0])?;
                        let r2 = r.object_property(&chain[1])?;
                        add(onto, Axiom::SubPropertyChainOf([r1, r2], sup))
                    }
                    sub => {
                        let sub = r.object_property(sub)?;
                        add(onto, Axiom::SubObjectPropertyOf(sub, sup))
                    }
                }
            }
            "ClassAssertion" => {
                arity(2, true)?;
                let ce = r.class_expression(&args[0])?.to_expression();
                let ind = self.individual(&args[1])?;
                add(onto, Axiom::ClassAssertion(ce, ind))
            }
            "ObjectPropertyAssertion" => {
                arity(3, true)?;
                let role = r.object_property(&args[0])?;
                let subject = self.individual(&args[1])?;
                let object = self.individual(&args[2])?;
                add(
                    onto,
                    Axiom::ObjectPropertyAssertion {
                        role,
                        subject,
                        object,
                    },
                )
            }
            "AnnotationAssertion" => {
                arity(3, true)?;
                let property = r.node_iri(&args[0])?;
                let subject = self.individual(&args[1])?;
                let value = self.literal(&args[2])?;
                add(
                    onto,
                    Axiom::AnnotationAssertion {
                        subject,
                        property,
                        value,
                    },
                )
            }
            h if UNSUPPORTED_AXIOMS.contains(&h) => Err(Issue::Unsupported {
                offset: at,
                message: format!("{h} is not supported"),
            }),
            h => Err(r.fatal(at, format!("unknown keyword {h}"))),
        }
    }

    /// Named individual or annotation subject; anonymous `_:x` nodes are unsupported.
    fn individual(&self, node: &Node) -> Result<Iri, Issue> {
        if let Node::Atom(tok) = node {
            if let TokenKind::PrefixedName { prefix, .. } = &tok.kind {
                if prefix == "_" {
                    return Err(Issue::Unsupported {
                        offset: tok.span.start,
                        message: "anonymous individuals are not supported".into(),
                    });
                }
            }
        }
        self.resolver.node_iri(node)
    }

    fn literal(&self, node: &Node) -> Result<Literal, Issue> {
        let r = &self.resolver;
        match node {
            Node::Atom(tok) => match &tok.kind {
                TokenKind::Literal {
                    lexical,
                    lang,
                    datatype,
                } => {
                    if let Some(dt) = datatype {
                        let dt = r.token_iri(dt)?;
                        let plain = [format!("{XSD}string"), format!("{RDF}PlainLiteral")];
                        if !plain.iter().any(|p| p == dt.as_str()) {
                            return Err(Issue::Unsupported {
                                offset: tok.span.start,
                                message: format!("typed literal of datatype {dt} is not supported"),
                            });
                        }
                    }
                    Ok(Literal {
                        lexical: lexical.clone(),
                        lang: lang.clone(),
                    })
                }
                TokenKind::FullIri(_) | TokenKind::PrefixedName { .. } => Err(Issue::Unsupported {
                    offset: tok.span.start,
                    message: "IRI-valued annotations are not supported".into(),
                }),
                _ => Err(r.fatal(tok.span.start, "expected a literal")),
            },
            Node::List { head_span, .. } => Err(r.fatal(head_span.start, "expected a literal")),
        }
    }
}
