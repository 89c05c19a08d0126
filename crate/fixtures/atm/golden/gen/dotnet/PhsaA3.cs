using System;
using System.Collections;
using System.Windows.Forms;

public class PhsaA3 : ClassPHSA {
    public readonly ConditionScheme conditionScheme = new ConditionScheme();
    public readonly Memory memory = new Memory();
    public readonly IOSystem ioSystem = new IOSystem();

    public PhsaA3(string name, Dispatcher dispatcher, ClassPHSA parent) : base(name, "A3", dispatcher, parent, "a3_s0") {
        states["a3_s0"] = new State("A3_S0", "S0", "initial", ordered());
        states["a3_idle"] = new State("A3_Idle", "Idle", "ordinary", ordered());
        states["a3_end"] = new State("A3_End", "End", "final", ordered());
        events["ev2"] = new Event("ev2", "Start checking for a card");
        events["ev12"] = new Event("ev12", "Retain the card");
        events["shutdown"] = new Event("shutdown", "Power off");
        transitions["1"] = new Transition("a3_s0", null, null, "a3_idle");
        transitions["2"] = new Transition("a3_idle", "ev2", null, "a3_idle");
        transitions["3"] = new Transition("a3_idle", "ev12", null, "a3_idle");
        transitions["4"] = new Transition("a3_idle", "shutdown", null, "a3_end");
    }

    public override void handler() {
        if (_cstate.Equals("a3_s0")) {
            _cstate="a3_idle";
        }
        else if (_cstate.Equals("a3_idle")) {
            if (_event.Equals("ev2")) {
                _cstate="a3_idle";
            }
            else if (_event.Equals("ev12")) {
                _cstate="a3_idle";
            }
            else if (_event.Equals("shutdown")) {
                _cstate="a3_end";
            }
        }
    }

    protected override bool enabled(string ev) {
        if (_cstate.Equals("a3_idle")) {
            return ev.Equals("ev2") || ev.Equals("ev12") || ev.Equals("shutdown");
        }
        return false;
    }

    public class ConditionScheme {
        public readonly Hashtable guards = new Hashtable();
        public readonly Hashtable funcActions = new Hashtable();

        public ConditionScheme() {
        }
    }

    public class Memory {
        public readonly Hashtable variables = new Hashtable();

        public Memory() {
        }
    }

    public class IOSystem {
        public readonly Hashtable ioActions = new Hashtable();

        public IOSystem() {
        }
    }
}
