import java.io.*;
import java.util.*;
import javax.swing.*;
import amda.streamio.Console;

public class PhsaA3 extends ClassPHSA {
    public final ConditionScheme conditionScheme = new ConditionScheme();
    public final Memory memory = new Memory();
    public final IOSystem ioSystem = new IOSystem();

    public PhsaA3(String name, Dispatcher dispatcher, ClassPHSA parent) {
        super(name, "A3", dispatcher, parent, "a3_s0");
        states.put("a3_s0", new State("A3_S0", "S0", "initial", ordered()));
        states.put("a3_idle", new State("A3_Idle", "Idle", "ordinary", ordered()));
        states.put("a3_end", new State("A3_End", "End", "final", ordered()));
        events.put("ev2", new Event("ev2", "Start checking for a card"));
        events.put("ev12", new Event("ev12", "Retain the card"));
        events.put("shutdown", new Event("shutdown", "Power off"));
        transitions.put("1", new Transition("a3_s0", null, null, "a3_idle"));
        transitions.put("2", new Transition("a3_idle", "ev2", null, "a3_idle"));
        transitions.put("3", new Transition("a3_idle", "ev12", null, "a3_idle"));
        transitions.put("4", new Transition("a3_idle", "shutdown", null, "a3_end"));
    }

    public void handler() {
        if (_cstate.equals("a3_s0")) {
            _cstate="a3_idle";
        }
        else if (_cstate.equals("a3_idle")) {
            if (_event.equals("ev2")) {
                _cstate="a3_idle";
            }
            else if (_event.equals("ev12")) {
                _cstate="a3_idle";
            }
            else if (_event.equals("shutdown")) {
                _cstate="a3_end";
            }
        }
    }

    protected boolean enabled(String ev) {
        if (_cstate.equals("a3_idle")) {
            return ev.equals("ev2") || ev.equals("ev12") || ev.equals("shutdown");
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
