//! Game instances, the three cost models and single-player best responses.
//!
//! A player that inoculates pays `C`. An insecure player in an attack
//! component of `k` players expects to lose `L·k/n`, because the virus starts
//! at a uniformly random node and infects the whole component it lands in.
//! Under friendship a player also weighs the actual costs of its neighbours,
//! either with a fixed factor `F` (absolute model) or with `F` divided by its
//! degree (relative model).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_exact, int, Rational};

/// How a player values the costs of its neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Neighbours are ignored; the friendship factor is treated as zero.
    Selfish,
    /// Perceived cost adds `F` times the sum of the neighbours' costs.
    Absolute,
    /// Perceived cost adds `F` times the average of the neighbours' costs.
    Relative,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Selfish, Model::Absolute, Model::Relative];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Selfish => "selfish",
            Model::Absolute => "absolute",
            Model::Relative => "relative",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "selfish" => Ok(Model::Selfish),
            "absolute" => Ok(Model::Absolute),
            "relative" => Ok(Model::Relative),
            _ => Err(Error::parse("model (selfish|absolute|relative)", s)),
        }
    }
}

/// A player's choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Insecure,
    /// Inoculated.
    Secure,
}

impl Strategy {
    pub fn flipped(self) -> Self {
        match self {
            Strategy::Insecure => Strategy::Secure,
            Strategy::Secure => Strategy::Insecure,
        }
    }

    pub fn is_secure(self) -> bool {
        self == Strategy::Secure
    }

    fn from_secure(secure: bool) -> Self {
        if secure {
            Strategy::Secure
        } else {
            Strategy::Insecure
        }
    }
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(self.is_secure()))
    }
}

/// One entry per player, `true` meaning inoculated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile {
    bits: Vec<bool>,
}

impl StrategyProfile {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        StrategyProfile { bits }
    }

    pub fn all_secure(n: usize) -> Self {
        StrategyProfile { bits: vec![true; n] }
    }

    pub fn all_insecure(n: usize) -> Self {
        StrategyProfile { bits: vec![false; n] }
    }

    /// The profile whose 0/1 string, read with node 0 as the most significant
    /// digit, is the binary expansion of `index`. Index order therefore equals
    /// lexicographic order of the strings.
    pub fn from_index(n: usize, index: u64) -> Self {
        let bits = (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect();
        StrategyProfile { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_secure(&self, node: usize) -> bool {
        self.bits[node]
    }

    pub fn strategy(&self, node: usize) -> Strategy {
        Strategy::from_secure(self.bits[node])
    }

    pub fn set(&mut self, node: usize, secure: bool) {
        self.bits[node] = secure;
    }

    pub fn flip(&mut self, node: usize) {
        self.bits[node] = !self.bits[node];
    }

    pub fn with_flip(&self, node: usize) -> Self {
        let mut p = self.clone();
        p.flip(node);
        p
    }

    pub fn secure_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn insecure_count(&self) -> usize {
        self.len() - self.secure_count()
    }

    pub fn secure_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn insecure_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i)
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for StrategyProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse("profile (string of 0/1)", s)),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::parse("profile (string of 0/1)", s));
        }
        Ok(StrategyProfile { bits })
    }
}

impl Serialize for StrategyProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StrategyProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Checks `L/n < C <= L` and `0 <= F <= 1`.
pub fn check_admissible(
    n: usize,
    inoculation_cost: Rational,
    loss: Rational,
    friendship: Rational,
) -> Result<()> {
    let nn = int(n as i128);
    if n == 0 || !(inoculation_cost > loss / nn && inoculation_cost <= loss) {
        return Err(Error::Inadmissible(format!(
            "need L/n < C <= L, got C={}, L={}, n={}",
            format_exact(&inoculation_cost),
            format_exact(&loss),
            n
        )));
    }
    if friendship < Rational::zero() || friendship > int(1) {
        return Err(Error::Inadmissible(format!(
            "need 0 <= F <= 1, got F={}",
            format_exact(&friendship)
        )));
    }
    Ok(())
}

/// A graph with inoculation cost `C`, loss `L`, friendship factor `F` and a
/// cost model.
#[derive(Debug, Clone, PartialEq)]
pub struct GameInstance {
    graph: Arc<Graph>,
    inoculation_cost: Rational,
    loss: Rational,
    friendship: Rational,
    model: Model,
}

impl GameInstance {
    /// Validates the admissible regime `L/n < C <= L` and `0 <= F <= 1`.
    /// Under the relative model every node needs at least one neighbour.
    pub fn new(
        graph: impl Into<Arc<Graph>>,
        inoculation_cost: Rational,
        loss: Rational,
        friendship: Rational,
        model: Model,
    ) -> Result<Self> {
        let graph = graph.into();
        check_admissible(graph.node_count(), inoculation_cost, loss, friendship)?;
        if model == Model::Relative {
            if let Some(node) = graph.isolated_node() {
                return Err(Error::IsolatedNode(node));
            }
        }
        Ok(GameInstance {
            graph,
            inoculation_cost,
            loss,
            friendship,
            model,
        })
    }

    pub fn with_model(&self, model: Model) -> Result<Self> {
        Self::new(
            self.graph.clone(),
            self.inoculation_cost,
            self.loss,
            self.friendship,
            model,
        )
    }

    pub fn with_friendship(&self, friendship: Rational) -> Result<Self> {
        Self::new(
            self.graph.clone(),
            self.inoculation_cost,
            self.loss,
            friendship,
            self.model,
        )
    }

    /// The same graph and costs with `F = 0`; its equilibria are the Nash
    /// equilibria of the selfish game.
    pub fn selfish(&self) -> Self {
        GameInstance {
            friendship: Rational::zero(),
            model: Model::Selfish,
            ..self.clone()
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// `C`.
    pub fn inoculation_cost(&self) -> Rational {
        self.inoculation_cost
    }

    /// `L`.
    pub fn loss(&self) -> Rational {
        self.loss
    }

    /// The stored `F`, regardless of model.
    pub fn friendship(&self) -> Rational {
        self.friendship
    }

    /// `F` as the model uses it: zero for the selfish model.
    pub fn effective_friendship(&self) -> Rational {
        match self.model {
            Model::Selfish => Rational::zero(),
            _ => self.friendship,
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// `Cn/L`, the selfish bound on attack component sizes.
    pub fn selfish_threshold(&self) -> Rational {
        self.inoculation_cost * int(self.node_count() as i128) / self.loss
    }

    /// Weight a player puts on each neighbour's actual cost.
    pub fn neighbor_weight(&self, node: usize) -> Rational {
        match self.model {
            Model::Selfish => Rational::zero(),
            Model::Absolute => self.friendship,
            Model::Relative => self.friendship / int(self.graph.degree(node) as i128),
        }
    }

    /// Actual cost of an insecure player in a component of `size` players.
    pub fn infection_cost(&self, size: usize) -> Rational {
        self.loss * int(size as i128) / int(self.node_count() as i128)
    }

    pub fn check_profile(&self, profile: &StrategyProfile) -> Result<()> {
        if profile.len() != self.node_count() {
            return Err(Error::ProfileLength {
                expected: self.node_count(),
                got: profile.len(),
            });
        }
        Ok(())
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.node_count() {
            return Err(Error::NodeOutOfRange {
                node,
                n: self.node_count(),
            });
        }
        Ok(())
    }
}

/// Serializable description of an instance, rationals written as `p/q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub edges: usize,
    #[serde(rename = "C")]
    pub inoculation_cost: String,
    #[serde(rename = "L")]
    pub loss: String,
    #[serde(rename = "F")]
    pub friendship: String,
    pub model: Model,
}

impl From<&GameInstance> for InstanceSummary {
    fn from(inst: &GameInstance) -> Self {
        InstanceSummary {
            n: inst.node_count(),
            edges: inst.graph().edge_count(),
            inoculation_cost: format_exact(&inst.inoculation_cost()),
            loss: format_exact(&inst.loss()),
            friendship: format_exact(&inst.friendship()),
            model: inst.model(),
        }
    }
}

/// Per-player and social costs of one profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    #[serde(serialize_with = "ser_list")]
    pub actual: Vec<Rational>,
    #[serde(serialize_with = "ser_list")]
    pub perceived: Vec<Rational>,
    #[serde(serialize_with = "ser_one")]
    pub social: Rational,
}

fn ser_list<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::rational::serde_text::list::serialize(v, s)
}

fn ser_one<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::rational::serde_text::serialize(v, s)
}

/// Reusable scratch space for component-local cost evaluation.
///
/// Each query runs a fresh traversal of only the components touching one
/// player's closed neighbourhood; nothing is cached between queries.
#[derive(Debug, Clone)]
pub(crate) struct Evaluator<'a> {
    inst: &'a GameInstance,
    stamp: Vec<u32>,
    label: Vec<u32>,
    epoch: u32,
    sizes: Vec<usize>,
    stack: Vec<usize>,
}

/// What a player sees of its neighbourhood under some profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Neighborhood {
    /// Own component size if insecure.
    pub own: Option<usize>,
    pub secure_neighbors: usize,
    pub insecure_neighbors: usize,
    /// Sum over insecure neighbours of their component sizes.
    pub insecure_size_sum: usize,
}

impl<'a> Evaluator<'a> {
    pub fn new(inst: &'a GameInstance) -> Self {
        let n = inst.node_count();
        Evaluator {
            inst,
            stamp: vec![0; n],
            label: vec![0; n],
            epoch: 0,
            sizes: Vec::new(),
            stack: Vec::new(),
        }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.sizes.clear();
    }

    fn component_size(&mut self, profile: &StrategyProfile, start: usize) -> usize {
        if self.stamp[start] == self.epoch {
            return self.sizes[self.label[start] as usize];
        }
        let g = self.inst.graph();
        let id = self.sizes.len() as u32;
        self.stamp[start] = self.epoch;
        self.label[start] = id;
        self.stack.push(start);
        let mut size = 0;
        while let Some(u) = self.stack.pop() {
            size += 1;
            for &v in g.neighbors(u) {
                if !profile.is_secure(v) && self.stamp[v] != self.epoch {
                    self.stamp[v] = self.epoch;
                    self.label[v] = id;
                    self.stack.push(v);
                }
            }
        }
        self.sizes.push(size);
        size
    }

    pub fn neighborhood(&mut self, profile: &StrategyProfile, node: usize) -> Neighborhood {
        self.next_epoch();
        let own = (!profile.is_secure(node)).then(|| self.component_size(profile, node));
        let mut hood = Neighborhood {
            own,
            secure_neighbors: 0,
            insecure_neighbors: 0,
            insecure_size_sum: 0,
        };
        let g = self.inst.graph();
        for &v in g.neighbors(node) {
            if profile.is_secure(v) {
                hood.secure_neighbors += 1;
            } else {
                hood.insecure_neighbors += 1;
                hood.insecure_size_sum += self.component_size(profile, v);
            }
        }
        hood
    }

    fn perceived_from(&self, node: usize, hood: &Neighborhood) -> Rational {
        let inst = self.inst;
        let own = match hood.own {
            Some(k) => inst.infection_cost(k),
            None => inst.inoculation_cost(),
        };
        let weight = inst.neighbor_weight(node);
        if weight.is_zero() {
            return own;
        }
        let friends = inst.inoculation_cost() * int(hood.secure_neighbors as i128)
            + inst.infection_cost(hood.insecure_size_sum);
        own + weight * friends
    }

    pub fn perceived(&mut self, profile: &StrategyProfile, node: usize) -> Rational {
        let hood = self.neighborhood(profile, node);
        self.perceived_from(node, &hood)
    }

    /// Perceived cost of `node` now and after flipping its strategy.
    pub fn flip_costs(&mut self, profile: &mut StrategyProfile, node: usize) -> (Rational, Rational) {
        let current = self.perceived(profile, node);
        profile.flip(node);
        let flipped = self.perceived(profile, node);
        profile.flip(node);
        (current, flipped)
    }

    pub fn improves_by_flipping(&mut self, profile: &mut StrategyProfile, node: usize) -> bool {
        let (current, flipped) = self.flip_costs(profile, node);
        flipped < current
    }
}

/// `c_a(i)`: `C` when inoculated, `L·k_i/n` otherwise.
///
/// # Panics
///
/// If `profile` does not have one entry per node.
pub fn actual_cost(inst: &GameInstance, profile: &StrategyProfile, node: usize) -> Rational {
    assert_eq!(profile.len(), inst.node_count(), "profile length");
    if profile.is_secure(node) {
        inst.inoculation_cost()
    } else {
        let mut eval = Evaluator::new(inst);
        eval.next_epoch();
        let k = eval.component_size(profile, node);
        inst.infection_cost(k)
    }
}

/// The cost a player minimises under the instance's model.
pub fn perceived_cost(inst: &GameInstance, profile: &StrategyProfile, node: usize) -> Rational {
    assert_eq!(profile.len(), inst.node_count(), "profile length");
    Evaluator::new(inst).perceived(profile, node)
}

/// Sum of all actual costs.
pub fn social_cost(inst: &GameInstance, profile: &StrategyProfile) -> Rational {
    assert_eq!(profile.len(), inst.node_count(), "profile length");
    let view = crate::graph::attack_components(inst.graph(), profile);
    let secure = profile.secure_count() as i128;
    // Each component of size k contributes k players paying L·k/n.
    let squares: usize = view.sizes().iter().map(|k| k * k).sum();
    inst.inoculation_cost() * int(secure) + inst.infection_cost(squares)
}

pub fn cost_report(inst: &GameInstance, profile: &StrategyProfile) -> CostReport {
    assert_eq!(profile.len(), inst.node_count(), "profile length");
    let view = crate::graph::attack_components(inst.graph(), profile);
    let actual: Vec<Rational> = (0..inst.node_count())
        .map(|v| match view.size_of(v) {
            Some(k) => inst.infection_cost(k),
            None => inst.inoculation_cost(),
        })
        .collect();
    let perceived = (0..inst.node_count())
        .map(|v| {
            let friends: Rational = inst.graph().neighbors(v).iter().map(|&u| actual[u]).sum();
            actual[v] + inst.neighbor_weight(v) * friends
        })
        .collect();
    let social = actual.iter().sum();
    CostReport {
        actual,
        perceived,
        social,
    }
}

/// The component size above which `node` prefers to inoculate.
///
/// With `w` the weight the model puts on each neighbour, `m` the number of
/// insecure neighbours and `K` the sum of their component sizes computed as if
/// `node` were secure, the threshold is `(Cn/L + w·K) / (1 + w·m)`. The node
/// inoculates iff its (hypothetical) component size is strictly larger.
pub fn inoculation_threshold(inst: &GameInstance, profile: &StrategyProfile, node: usize) -> Rational {
    assert_eq!(profile.len(), inst.node_count(), "profile length");
    let mut as_secure = profile.clone();
    as_secure.set(node, true);
    let hood = Evaluator::new(inst).neighborhood(&as_secure, node);
    let w = inst.neighbor_weight(node);
    (inst.selfish_threshold() + w * int(hood.insecure_size_sum as i128))
        / (int(1) + w * int(hood.insecure_neighbors as i128))
}

/// Outcome of offering one player a best response.
#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse {
    pub current: Strategy,
    pub preferred: Strategy,
    /// True iff flipping strictly lowers the perceived cost.
    pub improves: bool,
    pub current_cost: Rational,
    pub flipped_cost: Rational,
}

/// Compares the perceived cost of keeping versus flipping the strategy of
/// `node`. Ties keep the current strategy.
pub fn best_response(inst: &GameInstance, profile: &StrategyProfile, node: usize) -> BestResponse {
    assert_eq!(profile.len(), inst.node_count(), "profile length");
    let mut scratch = profile.clone();
    let (current_cost, flipped_cost) = Evaluator::new(inst).flip_costs(&mut scratch, node);
    let current = profile.strategy(node);
    let improves = flipped_cost < current_cost;
    BestResponse {
        current,
        preferred: if improves { current.flipped() } else { current },
        improves,
        current_cost,
        flipped_cost,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_star};
    use crate::rational::ratio;

    fn inst(g: Graph, c: Rational, l: Rational, f: Rational, model: Model) -> GameInstance {
        GameInstance::new(g, c, l, f, model).unwrap()
    }

    fn center_secure(n: usize) -> StrategyProfile {
        let mut p = StrategyProfile::all_insecure(n);
        p.set(0, true);
        p
    }

    #[test]
    fn admissibility() {
        let k4 = make_complete(4).unwrap();
        let ok = |c, l, f| GameInstance::new(k4.clone(), c, l, f, Model::Absolute);
        assert!(ok(int(1), int(1), int(1)).is_ok());
        assert!(matches!(ok(ratio(1, 4), int(1), int(0)), Err(Error::Inadmissible(_))));
        assert!(matches!(ok(int(2), int(1), int(0)), Err(Error::Inadmissible(_))));
        assert!(matches!(ok(int(1), int(1), ratio(3, 2)), Err(Error::Inadmissible(_))));
        assert!(matches!(ok(int(1), int(1), ratio(-1, 2)), Err(Error::Inadmissible(_))));

        let lonely = Graph::from_edges(3, [(0, 1)]).unwrap();
        let rel = GameInstance::new(lonely.clone(), int(1), int(1), int(1), Model::Relative);
        assert!(matches!(rel, Err(Error::IsolatedNode(2))));
        assert!(GameInstance::new(lonely, int(1), int(1), int(1), Model::Absolute).is_ok());
    }

    #[test]
    fn actual_cost_examples() {
        let s4 = inst(make_star(4).unwrap(), int(1), int(2), int(0), Model::Selfish);
        let p = center_secure(4);
        assert_eq!(actual_cost(&s4, &p, 1), ratio(1, 2));
        assert_eq!(actual_cost(&s4, &p, 0), int(1));

        let all = StrategyProfile::all_secure(4);
        assert!((0..4).all(|v| actual_cost(&s4, &all, v) == int(1)));

        let k4 = inst(make_complete(4).unwrap(), int(1), int(1), int(0), Model::Selfish);
        let p = StrategyProfile::all_insecure(4);
        assert!((0..4).all(|v| actual_cost(&k4, &p, v) == int(1)));
    }

    #[test]
    fn perceived_cost_examples() {
        let g = make_star(4).unwrap();
        let p = center_secure(4);
        let abs = inst(g.clone(), int(1), int(2), ratio(1, 2), Model::Absolute);
        assert_eq!(perceived_cost(&abs, &p, 0), ratio(7, 4));
        let rel = inst(g.clone(), int(1), int(2), ratio(1, 2), Model::Relative);
        assert_eq!(perceived_cost(&rel, &p, 0), ratio(5, 4));

        let zero = inst(g, int(1), int(2), int(0), Model::Absolute);
        for v in 0..4 {
            assert_eq!(perceived_cost(&zero, &p, v), actual_cost(&zero, &p, v));
        }
    }

    #[test]
    fn selfish_ignores_stored_friendship() {
        let s = inst(make_star(4).unwrap(), int(1), int(2), int(1), Model::Selfish);
        let p = center_secure(4);
        assert_eq!(perceived_cost(&s, &p, 0), int(1));
        assert_eq!(s.effective_friendship(), int(0));
    }

    #[test]
    fn social_cost_examples() {
        let s4 = inst(make_star(4).unwrap(), int(1), int(2), int(0), Model::Selfish);
        assert_eq!(social_cost(&s4, &center_secure(4)), ratio(5, 2));
        assert_eq!(social_cost(&s4, &StrategyProfile::all_secure(4)), int(4));
        let k4 = inst(make_complete(4).unwrap(), int(1), int(1), int(0), Model::Selfish);
        assert_eq!(social_cost(&k4, &StrategyProfile::all_insecure(4)), int(4));
    }

    #[test]
    fn cost_report_matches_single_queries() {
        let c8 = inst(make_cycle(8).unwrap(), int(1), int(4), ratio(1, 3), Model::Relative);
        let p: StrategyProfile = "00100110".parse().unwrap();
        let report = cost_report(&c8, &p);
        for v in 0..8 {
            assert_eq!(report.actual[v], actual_cost(&c8, &p, v));
            assert_eq!(report.perceived[v], perceived_cost(&c8, &p, v));
        }
        assert_eq!(report.social, social_cost(&c8, &p));
    }

    #[test]
    fn threshold_examples() {
        // Node 0 has degree 4; its insecure neighbours 1 and 2 are singletons.
        let g = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (0, 4), (3, 5), (4, 6), (5, 7), (6, 7)])
            .unwrap();
        let p: StrategyProfile = "10011111".parse().unwrap();
        let abs = inst(g.clone(), int(1), int(4), ratio(1, 2), Model::Absolute);
        assert_eq!(inoculation_threshold(&abs, &p, 0), ratio(3, 2));
        let rel = inst(g.clone(), int(1), int(4), ratio(1, 2), Model::Relative);
        assert_eq!(inoculation_threshold(&rel, &p, 0), ratio(9, 5));
        let selfish = inst(g, int(1), int(4), ratio(1, 2), Model::Selfish);
        assert_eq!(inoculation_threshold(&selfish, &p, 0), int(2));
    }

    #[test]
    fn best_response_examples() {
        let k4 = make_complete(4).unwrap();
        let any = inst(k4.clone(), int(1), int(1), int(1), Model::Absolute);
        let all = StrategyProfile::all_secure(4);
        let br = best_response(&any, &all, 2);
        assert!(br.improves);
        assert_eq!(br.preferred, Strategy::Insecure);

        let p: StrategyProfile = "0011".parse().unwrap();
        let br = best_response(&any, &p, 0);
        assert!(!br.improves);
        assert_eq!(br.preferred, Strategy::Insecure);
        assert_eq!(br.current_cost, int(3));
        assert_eq!(br.flipped_cost, ratio(13, 4));

        let s8 = inst(make_star(8).unwrap(), ratio(13, 32), int(1), ratio(1, 8), Model::Absolute);
        let p: StrategyProfile = "00011111".parse().unwrap();
        let br = best_response(&s8, &p, 0);
        assert!(br.improves);
        assert_eq!(br.preferred, Strategy::Secure);
        assert_eq!(br.current_cost, ratio(185, 256));
        assert_eq!(br.flipped_cost, ratio(177, 256));
    }

    #[test]
    fn profile_text_and_index() {
        let p: StrategyProfile = "0110".parse().unwrap();
        assert_eq!(p.to_string(), "0110");
        assert_eq!(StrategyProfile::from_index(4, 0b0110), p);
        assert_eq!(p.secure_count(), 2);
        assert!("01x".parse::<StrategyProfile>().is_err());
        assert!("".parse::<StrategyProfile>().is_err());
    }
}
