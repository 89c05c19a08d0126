using System;
using System.Collections;
using System.Windows.Forms;

/// Creates the application objects and routes events between them.
public class Dispatcher {
    private readonly string[] _names = { "controller", "monitor", "card_reader", "keyboard" };
    private readonly Hashtable instances = new Hashtable();
    private readonly Hashtable routes = new Hashtable();
    private readonly System.Collections.Queue queue = new System.Collections.Queue();

    public Dispatcher() {
        instances["controller"] = new PhsaA1("controller", this, null);
        instances["monitor"] = new PhsaA2("monitor", this, null);
        instances["card_reader"] = new PhsaA3("card_reader", this, null);
        instances["keyboard"] = new PhsaA4("keyboard", this, null);
        routes["controller ev1"] = "monitor";
        routes["controller ev2"] = "card_reader";
        routes["controller ev4"] = "monitor";
        routes["controller ev5"] = "keyboard";
        routes["controller ev9"] = "monitor";
        routes["controller ev10"] = "monitor";
        routes["controller ev11"] = "monitor";
        routes["controller ev12"] = "card_reader";
        routes["controller ev14"] = "monitor";
    }

    public ClassPHSA instance(string name) {
        return instances[name] as ClassPHSA;
    }

    /// Queues ev from sender for its target automaton or routed receiver.
    public void post(ClassPHSA sender, string ev, string target) {
        ClassPHSA receiver = null;
        if (target != null) {
            receiver = sender.root().find(target);
        }
        else {
            string name = routes[sender.root().name() + " " + ev] as string;
            if (name != null) {
                receiver = instance(name);
            }
        }
        if (receiver == null) {
            System.Console.WriteLine(sender.name() + ": no route for " + ev);
            return;
        }
        queue.Enqueue(new object[] { receiver, ev });
    }

    public void run() {
        while (queue.Count > 0) {
            object[] item = (object[]) queue.Dequeue();
            ClassPHSA receiver = (ClassPHSA) item[0];
            string ev = (string) item[1];
            if (!receiver.deliver(ev)) {
                System.Console.WriteLine(receiver.name() + ": dropped " + ev);
            }
        }
    }

    public void start() {
        foreach (string name in _names) {
            instance(name).start();
        }
        run();
    }

    public void inject(string name, string ev) {
        ClassPHSA receiver = instance(name);
        if (receiver == null) {
            System.Console.WriteLine("unknown instance " + name);
            return;
        }
        queue.Enqueue(new object[] { receiver, ev });
        run();
    }

    /// Reads `instance event` lines from standard input.
    public static void Main(string[] args) {
        Dispatcher dispatcher = new Dispatcher();
        dispatcher.start();
        string line;
        while ((line = System.Console.ReadLine()) != null) {
            line = line.Trim();
            if (line.Length == 0 || line.StartsWith("#")) {
                continue;
            }
            string[] parts = line.Split((char[]) null, System.StringSplitOptions.RemoveEmptyEntries);
            if (parts.Length == 2) {
                dispatcher.inject(parts[0], parts[1]);
            }
        }
    }
}
