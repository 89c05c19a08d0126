import java.io.*;
import java.util.*;
import javax.swing.*;
import amda.streamio.Console;

public class PhsaA2 extends ClassPHSA {
    public final ConditionScheme conditionScheme = new ConditionScheme();
    public final Memory memory = new Memory();
    public final IOSystem ioSystem = new IOSystem();

    public PhsaA2(String name, Dispatcher dispatcher, ClassPHSA parent) {
        super(name, "A2", dispatcher, parent, "a2_s0");
        states.put("a2_s0", new State("A2_S0", "S0", "initial", ordered()));
        states.put("a2_idle", new State("A2_Idle", "Idle", "ordinary", ordered()));
        states.put("a2_end", new State("A2_End", "End", "final", ordered()));
        events.put("ev1", new Event("ev1", "Display welcome message"));
        events.put("ev4", new Event("ev4", "Display PIN prompt"));
        events.put("ev9", new Event("ev9", "Display user menu"));
        events.put("ev10", new Event("ev10", "Display wrong code message"));
        events.put("ev11", new Event("ev11", "Display card confiscated message"));
        events.put("ev14", new Event("ev14", "Display goodbye message"));
        events.put("shutdown", new Event("shutdown", "Power off"));
        transitions.put("1", new Transition("a2_s0", null, null, "a2_idle"));
        transitions.put("2", new Transition("a2_idle", "ev1", null, "a2_idle"));
        transitions.put("3", new Transition("a2_idle", "ev4", null, "a2_idle"));
        transitions.put("4", new Transition("a2_idle", "ev9", null, "a2_idle"));
        transitions.put("5", new Transition("a2_idle", "ev10", null, "a2_idle"));
        transitions.put("6", new Transition("a2_idle", "ev11", null, "a2_idle"));
        transitions.put("7", new Transition("a2_idle", "ev14", null, "a2_idle"));
        transitions.put("8", new Transition("a2_idle", "shutdown", null, "a2_end"));
    }

    public void handler() {
        if (_cstate.equals("a2_s0")) {
            _cstate="a2_idle";
        }
        else if (_cstate.equals("a2_idle")) {
            if (_event.equals("ev1")) {
                _cstate="a2_idle";
            }
            else if (_event.equals("ev4")) {
                _cstate="a2_idle";
            }
            else if (_event.equals("ev9")) {
                _cstate="a2_idle";
            }
            else if (_event.equals("ev10")) {
                _cstate="a2_idle";
            }
            else if (_event.equals("ev11")) {
                _cstate="a2_idle";
            }
            else if (_event.equals("ev14")) {
                _cstate="a2_idle";
            }
            else if (_event.equals("shutdown")) {
                _cstate="a2_end";
            }
        }
    }

    protected boolean enabled(String ev) {
        if (_cstate.equals("a2_idle")) {
            return ev.equals("ev1") || ev.equals("ev4") || ev.equals("ev9") || ev.equals("ev10") || ev.equals("ev11") || ev.equals("ev14") || ev.equals("shutdown");
        }
        return false;
    }

    public static class ConditionScheme {
        public final HashTable guards = new HashTable();
        public final HashTable funcActions = new HashTable();

        public ConditionScheme() {
        }
    }

    public static class Memory {
        public final HashTable variables = new HashTable();

        public Memory() {
        }
    }

    public static class IOSystem {
        public final HashTable ioActions = new HashTable();

        public IOSystem() {
        }
    }
}
