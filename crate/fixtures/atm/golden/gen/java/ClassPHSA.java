import java.io.*;
import java.util.*;
import javax.swing.*;
import amda.streamio.Console;

/** Generic automaton structure shared by all PHSA classes. */
public abstract class ClassPHSA {
    public static class State {
        public final String id;
        public final String name;
        public final String kind;
        public final ArrayList actions;

        public State(String id, String name, String kind, ArrayList actions) {
            this.id = id;
            this.name = name;
            this.kind = kind;
            this.actions = actions;
        }
    }

    public static class Event {
        public final String id;
        public final String description;

        public Event(String id, String description) {
            this.id = id;
            this.description = description;
        }
    }

    public static class Transition {
        public final String source;
        public final String event;
        public final String guard;
        public final String destination;

        public Transition(String source, String event, String guard, String destination) {
            this.source = source;
            this.event = event;
            this.guard = guard;
            this.destination = destination;
        }
    }

    public static class OclExpression {
        public final String text;

        public OclExpression(String text) {
            this.text = text;
        }
    }

    public static class Guard {
        public final String id;
        public final OclExpression expression;

        public Guard(String id, OclExpression expression) {
            this.id = id;
            this.expression = expression;
        }
    }

    public abstract static class Action {
    }

    public static class InlineAction extends Action {
        public final String text;

        public InlineAction(String text) {
            this.text = text;
        }
    }

    public static class CallAction extends Action {
        public final String function;

        public CallAction(String function) {
            this.function = function;
        }
    }

    public static class SendEvent extends Action {
        public final String event;
        public final String target;

        public SendEvent(String event, String target) {
            this.event = event;
            this.target = target;
        }
    }

    public static class ActivateAction extends Action {
        public final String child;

        public ActivateAction(String child) {
            this.child = child;
        }
    }

    public static class FuncAction {
        public final String id;
        public final String name;
        public final boolean external;

        public FuncAction(String id, String name, boolean external) {
            this.id = id;
            this.name = name;
            this.external = external;
        }
    }

    public static class Variable {
        public final String name;
        public final String type;

        public Variable(String name, String type) {
            this.name = name;
            this.type = type;
        }
    }

    public abstract static class IOAction {
        public final String id;
        public final String destination;
        public final String control;

        protected IOAction(String id, String destination, String control) {
            this.id = id;
            this.destination = destination;
            this.control = control;
        }
    }

    public static class StreamInput extends IOAction {
        public StreamInput(String id, String destination, String control) {
            super(id, destination, control);
        }
    }

    public static class StreamOutput extends IOAction {
        public StreamOutput(String id, String destination, String control) {
            super(id, destination, control);
        }
    }

    public static class GuiInput extends IOAction {
        public GuiInput(String id, String destination, String control) {
            super(id, destination, control);
        }
    }

    public static class GuiOutput extends IOAction {
        public GuiOutput(String id, String destination, String control) {
            super(id, destination, control);
        }
    }

    protected String _cstate;
    protected String _event = "";
    protected final String _name;
    protected final String _phsa;
    protected final String _initial;
    protected final Dispatcher _dispatcher;
    protected final ClassPHSA _parent;
    protected ClassPHSA _active;
    private int _activations;
    protected HashTable states = new HashTable();
    protected HashTable events = new HashTable();
    protected HashTable transitions = new HashTable();
    protected HashTable children = new HashTable();

    protected ClassPHSA(String name, String phsa, Dispatcher dispatcher, ClassPHSA parent, String initial) {
        _name = name;
        _phsa = phsa;
        _dispatcher = dispatcher;
        _parent = parent;
        _initial = initial;
        _cstate = initial;
    }

    /** Transition function: moves from _cstate on _event. */
    public abstract void handler();

    /** Whether the current state has a transition enabled by ev. */
    protected abstract boolean enabled(String ev);

    public String name() {
        return _name;
    }

    public String state() {
        return _cstate;
    }

    public ClassPHSA root() {
        return _parent == null ? this : _parent.root();
    }

    /** The automaton of this object whose class id is phsa. */
    public ClassPHSA find(String phsa) {
        if (_phsa.equals(phsa)) {
            return this;
        }
        for (Object child : children.values()) {
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

    /** Fires completion transitions until the state is stable. */
    protected void complete() {
        String before;
        do {
            before = _cstate;
            step("");
        } while (!_cstate.equals(before));
    }

    private void step(String ev) {
        String before = _cstate;
        int activations = _activations;
        _event = ev;
        handler();
        if (!_cstate.equals(before) && _activations == activations) {
            _active = null;
        }
    }

    /** Offers ev to the active sub-automaton first, then to this one. */
    public boolean deliver(String ev) {
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

    protected void activate(String child) {
        ClassPHSA c = (ClassPHSA) children.get(child);
        c.reset();
        _active = c;
        _activations++;
        c.complete();
    }

    protected void reset() {
        _cstate = _initial;
        _active = null;
    }

    protected void send(String ev) {
        _dispatcher.post(this, ev, null);
    }

    protected void send(String ev, String target) {
        _dispatcher.post(this, ev, target);
    }

    protected static ArrayList ordered(Object... items) {
        ArrayList result = new ArrayList();
        result.addAll(java.util.Arrays.asList(items));
        return result;
    }
}
