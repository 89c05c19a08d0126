using System;
using System.Collections;
using System.Windows.Forms;

/// Generic automaton structure shared by all PHSA classes.
public abstract class ClassPHSA {
    public class State {
        public readonly string id;
        public readonly string name;
        public readonly string kind;
        public readonly Array actions;

        public State(string id, string name, string kind, Array actions) {
            this.id = id;
            this.name = name;
            this.kind = kind;
            this.actions = actions;
        }
    }

    public class Event {
        public readonly string id;
        public readonly string description;

        public Event(string id, string description) {
            this.id = id;
            this.description = description;
        }
    }

    public class Transition {
        public readonly string source;
        public readonly string event;
        public readonly string guard;
        public readonly string destination;

        public Transition(string source, string event, string guard, string destination) {
            this.source = source;
            this.event = event;
            this.guard = guard;
            this.destination = destination;
        }
    }

    public class OclExpression {
        public readonly string text;

        public OclExpression(string text) {
            this.text = text;
        }
    }

    public class Guard {
        public readonly string id;
        public readonly OclExpression expression;

        public Guard(string id, OclExpression expression) {
            this.id = id;
            this.expression = expression;
        }
    }

    public abstract class Action {
    }

    public class InlineAction : Action {
        public readonly string text;

        public InlineAction(string text) {
            this.text = text;
        }
    }

    public class CallAction : Action {
        public readonly string function;

        public CallAction(string function) {
            this.function = function;
        }
    }

    public class SendEvent : Action {
        public readonly string event;
        public readonly string target;

        public SendEvent(string event, string target) {
            this.event = event;
            this.target = target;
        }
    }

    public class ActivateAction : Action {
        public readonly string child;

        public ActivateAction(string child) {
            this.child = child;
        }
    }

    public class FuncAction {
        public readonly string id;
        public readonly string name;
        public readonly bool external;

        public FuncAction(string id, string name, bool external) {
            this.id = id;
            this.name = name;
            this.external = external;
        }
    }

    public class Variable {
        public readonly string name;
        public readonly string type;

        public Variable(string name, string type) {
            this.name = name;
            this.type = type;
        }
    }

    public abstract class IOAction {
        public readonly string id;
        public readonly string destination;
        public readonly string control;

        protected IOAction(string id, string destination, string control) {
            this.id = id;
            this.destination = destination;
            this.control = control;
        }
    }

    public class StreamInput : IOAction {
        public StreamInput(string id, string destination, string control) : base(id, destination, control) {
        }
    }

    public class StreamOutput : IOAction {
        public StreamOutput(string id, string destination, string control) : base(id, destination, control) {
        }
    }

    public class GuiInput : IOAction {
        public GuiInput(string id, string destination, string control) : base(id, destination, control) {
        }
    }

    public class GuiOutput : IOAction {
        public GuiOutput(string id, string destination, string control) : base(id, destination, control) {
        }
    }

    protected string _cstate;
    protected string _event = "";
    protected readonly string _name;
    protected readonly string _phsa;
    protected readonly string _initial;
    protected readonly Dispatcher _dispatcher;
    protected readonly ClassPHSA _parent;
    protected ClassPHSA _active;
    private int _activations;
    protected Hashtable states = new Hashtable();
    protected Hashtable events = new Hashtable();
    protected Hashtable transitions = new Hashtable();
    protected Hashtable children = new Hashtable();

    protected ClassPHSA(string name, string phsa, Dispatcher dispatcher, ClassPHSA parent, string initial) {
        _name = name;
        _phsa = phsa;
        _dispatcher = dispatcher;
        _parent = parent;
        _initial = initial;
        _cstate = initial;
    }

    /// Transition function: moves from _cstate on _event.
    public abstract void handler();

    /// Whether the current state has a transition enabled by ev.
    protected abstract bool enabled(string ev);

    public string name() {
        return _name;
    }

    public string state() {
        return _cstate;
    }

    public ClassPHSA root() {
        return _parent == null ? this : _parent.root();
    }

    /// The automaton of this object whose class id is phsa.
    public ClassPHSA find(string phsa) {
        if (_phsa.Equals(phsa)) {
            return this;
        }
        foreach (object child in children.Values) {
            ClassPHSA found = ((ClassPHSA) child).find(phsa);
            if (found != null) {
                return found;
            }
        }
        return null;
    }

    public void start() {
        complete();
    }

    /// Fires completion transitions until the state is stable.
    protected void complete() {
        string before;
        do {
            before = _cstate;
            step("");
        } while (!_cstate.Equals(before));
    }

    private void step(string ev) {
        string before = _cstate;
        int activations = _activations;
        _event = ev;
        handler();
        if (!_cstate.Equals(before) && _activations == activations) {
            _active = null;
        }
    }

    /// Offers ev to the active sub-automaton first, then to this one.
    public bool deliver(string ev) {
        if (_active != null && _active.deliver(ev)) {
            return true;
        }
        if (!enabled(ev)) {
            return false;
        }
        step(ev);
        complete();
        return true;
    }

    protected void activate(string child) {
        ClassPHSA c = (ClassPHSA) children[child];
        c.reset();
        _active = c;
        _activations++;
        c.complete();
    }

    protected void reset() {
        _cstate = _initial;
        _active = null;
    }

    protected void send(string ev) {
        _dispatcher.post(this, ev, null);
    }

    protected void send(string ev, string target) {
        _dispatcher.post(this, ev, target);
    }

    protected static Array ordered(params object[] items) {
        return items;
    }
}
